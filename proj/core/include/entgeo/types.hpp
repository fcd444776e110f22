#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entgeo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Subsystem dimensions, outermost factor first.
using Dims = std::vector<int>;

enum class ErrorCode {
  InvalidDimension,
  DimensionMismatch,
  IndexOutOfRange,
  InvalidState,
  InvalidArgument,
  UnsupportedDims,
  DegeneratePointSet,
  NotConverged,
  NoWitness,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Numerical solver failures, as opposed to bad input.
  bool is_solver_failure() const noexcept {
    return code_ == ErrorCode::NotConverged || code_ == ErrorCode::DegeneratePointSet;
  }

 private:
  ErrorCode code_;
};

// Thrown by iterative solvers that hit their iteration cap.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, double residual, long iterations)
      : Error(ErrorCode::NotConverged, what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

// Point set whose affine hull is not full-dimensional. `subspace` holds an
// orthonormal basis (columns) of the directions the points do not span.
class DegeneratePointSet : public Error {
 public:
  DegeneratePointSet(const std::string& what, RealMatrix subspace)
      : Error(ErrorCode::DegeneratePointSet, what), subspace_(std::move(subspace)) {}

  const RealMatrix& subspace() const noexcept { return subspace_; }

 private:
  RealMatrix subspace_;
};

}  // namespace entgeo
