#include "entgeo/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace entgeo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::UnsupportedDims: return "unsupported-dims";
    case ErrorCode::DegeneratePointSet: return "degenerate-point-set";
    case ErrorCode::NotConverged: return "not-converged";
    case ErrorCode::NoWitness: return "no-witness";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

int product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

// ---------------------------------------------------------------------------
// DensityOperator

namespace {

void check_dims(const ComplexMatrix& m, const Dims& dims) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "density operator must be square");
  }
  if (dims.empty() || std::any_of(dims.begin(), dims.end(), [](int d) { return d < 1; })) {
    throw Error(ErrorCode::InvalidDimension, "subsystem dimensions must be positive");
  }
  if (product(dims) != m.rows()) {
    std::ostringstream os;
    os << "subsystem dimensions multiply to " << product(dims) << " but matrix side is " << m.rows();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

void require_bipartite(const DensityOperator& rho, const char* op) {
  if (!rho.is_bipartite()) {
    throw Error(ErrorCode::InvalidDimension, std::string(op) + " requires a bipartite state");
  }
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix, Dims dims) : dims_(std::move(dims)) {
  check_dims(matrix, dims_);
  const double herm = hermiticity_defect(matrix);
  if (herm > kStateTolerance) {
    throw Error(ErrorCode::InvalidState, "matrix is not Hermitian (defect " + std::to_string(herm) + ")");
  }
  matrix_ = hermitian_part(matrix);
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kStateTolerance) {
    throw Error(ErrorCode::InvalidState, "trace is " + std::to_string(trace) + ", expected 1");
  }
  const double min_eig = hermitian_eigenvalues(matrix_)(0);
  if (min_eig < -kStateTolerance) {
    throw Error(ErrorCode::InvalidState, "matrix is not positive semidefinite (min eigenvalue " +
                                             std::to_string(min_eig) + ")");
  }
}

DensityOperator::DensityOperator(ComplexMatrix matrix)
    : DensityOperator(matrix, Dims{static_cast<int>(matrix.rows())}) {}

DensityOperator DensityOperator::from_ket(const ComplexVector& ket, Dims dims) {
  const double norm = ket.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidState, "ket is not normalized");
  }
  return DensityOperator(ket * ket.adjoint(), std::move(dims));
}

RealVector DensityOperator::eigenvalues() const { return hermitian_eigenvalues(matrix_); }

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

// ---------------------------------------------------------------------------
// Gell-Mann basis and Bloch coordinates

HermitianBasis hermitian_basis(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDimension, "basis dimension must be >= 2");
  HermitianBasis basis;
  basis.dim = d;
  basis.alpha = 2.0;
  basis.elements.reserve(static_cast<std::size_t>(d * d - 1));
  const Complex i(0.0, 1.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      basis.elements.push_back(std::move(m));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = -i;
      m(k, j) = i;
      basis.elements.push_back(std::move(m));
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) m(j, j) = c;
    m(l, l) = -c * l;
    basis.elements.push_back(std::move(m));
  }
  return basis;
}

BlochVector to_bloch(const ComplexMatrix& h) {
  const int d = static_cast<int>(h.rows());
  if (d < 2 || h.cols() != d) throw Error(ErrorCode::InvalidDimension, "to_bloch needs a square matrix, side >= 2");
  // r_k = (d / 2) Tr(s_k h), evaluated entrywise for the Gell-Mann layout.
  const double scale = d / 2.0;
  RealVector r(d * d - 1);
  int idx = 0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) r(idx++) = scale * (h(j, k) + h(k, j)).real();
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) r(idx++) = scale * (Complex(0, 1) * (h(j, k) - h(k, j))).real();
  for (int l = 1; l < d; ++l) {
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    double acc = 0.0;
    for (int j = 0; j < l; ++j) acc += h(j, j).real();
    acc -= l * h(l, l).real();
    r(idx++) = scale * c * acc;
  }
  return {std::move(r), d};
}

BlochVector to_bloch(const DensityOperator& rho) { return to_bloch(rho.matrix()); }

ComplexMatrix from_bloch(const BlochVector& r) {
  const int d = r.dim;
  if (d < 2) throw Error(ErrorCode::InvalidDimension, "Bloch dimension must be >= 2");
  if (r.coords.size() != d * d - 1) {
    throw Error(ErrorCode::DimensionMismatch, "Bloch vector length " + std::to_string(r.coords.size()) +
                                                  " does not match d^2-1 = " + std::to_string(d * d - 1));
  }
  ComplexMatrix m = ComplexMatrix::Identity(d, d);
  const Complex i(0.0, 1.0);
  int idx = 0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      m(j, k) += r.coords(idx);
      m(k, j) += r.coords(idx);
      ++idx;
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      m(j, k) += -i * r.coords(idx);
      m(k, j) += i * r.coords(idx);
      ++idx;
    }
  for (int l = 1; l < d; ++l) {
    const double c = std::sqrt(2.0 / (l * (l + 1.0))) * r.coords(idx++);
    for (int j = 0; j < l; ++j) m(j, j) += c;
    m(l, l) -= c * l;
  }
  return m / static_cast<double>(d);
}

double pure_state_radius(int d) { return std::sqrt(d * (d - 1) / 2.0); }

// ---------------------------------------------------------------------------
// ProbabilityVector

bool ProbabilityVector::is_valid(const RealVector& p, double tol) {
  if (p.size() == 0) return false;
  if ((p.array() < 0.0).any()) return false;
  return std::abs(p.sum() - 1.0) <= tol;
}

ProbabilityVector::ProbabilityVector(RealVector probs) : probs_(std::move(probs)) {
  if (!is_valid(probs_)) {
    throw Error(ErrorCode::InvalidArgument, "not a probability vector (entries must be >= 0 and sum to 1)");
  }
}

ProbabilityVector::ProbabilityVector(std::initializer_list<double> probs)
    : ProbabilityVector(RealVector::Map(probs.begin(), static_cast<Eigen::Index>(probs.size()))) {}

ProbabilityVector ProbabilityVector::uniform(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "uniform distribution needs n >= 1");
  return ProbabilityVector(RealVector::Constant(n, 1.0 / n));
}

// ---------------------------------------------------------------------------
// Composite systems

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  ComplexMatrix out = kron(a.matrix(), b.matrix());
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(std::move(out), std::move(dims));
}

DensityOperator partial_trace(const DensityOperator& rho, int keep) {
  require_bipartite(rho, "partial_trace");
  if (keep < 0 || keep > 1) throw Error(ErrorCode::IndexOutOfRange, "subsystem index must be 0 or 1");
  const int da = rho.dims()[0];
  const int db = rho.dims()[1];
  const auto& m = rho.matrix();
  if (keep == 0) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return DensityOperator(std::move(out), Dims{da});
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return DensityOperator(std::move(out), Dims{db});
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const Dims& dims, int part) {
  if (dims.size() != 2) throw Error(ErrorCode::InvalidDimension, "partial_transpose requires bipartite dims");
  if (part < 0 || part > 1) throw Error(ErrorCode::IndexOutOfRange, "subsystem index must be 0 or 1");
  const int da = dims[0];
  const int db = dims[1];
  if (m.rows() != da * db || m.cols() != da * db) {
    throw Error(ErrorCode::DimensionMismatch, "matrix side does not match dims");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (int ia = 0; ia < da; ++ia)
    for (int ib = 0; ib < db; ++ib)
      for (int ja = 0; ja < da; ++ja)
        for (int jb = 0; jb < db; ++jb) {
          const int row = ia * db + ib;
          const int col = ja * db + jb;
          if (part == 1) {
            out(ia * db + jb, ja * db + ib) = m(row, col);
          } else {
            out(ja * db + ib, ia * db + jb) = m(row, col);
          }
        }
  return out;
}

ComplexMatrix partial_transpose(const DensityOperator& rho, int part) {
  require_bipartite(rho, "partial_transpose");
  return partial_transpose(rho.matrix(), rho.dims(), part);
}

PptResult is_ppt(const DensityOperator& rho, double tol) {
  require_bipartite(rho, "is_ppt");
  const double min_eig = hermitian_eigenvalues(partial_transpose(rho, 1))(0);
  return {min_eig >= -tol, min_eig};
}

bool majorization_check(const DensityOperator& rho) {
  require_bipartite(rho, "majorization_check");
  const int n = rho.dim();
  std::vector<double> joint(n, 0.0);
  std::vector<double> marginal(n, 0.0);
  const RealVector ev = rho.eigenvalues();
  const RealVector ev_a = partial_trace(rho, 0).eigenvalues();
  for (int i = 0; i < n; ++i) joint[i] = ev(i);
  for (Eigen::Index i = 0; i < ev_a.size(); ++i) marginal[i] = ev_a(i);
  std::sort(joint.begin(), joint.end(), std::greater<>());
  std::sort(marginal.begin(), marginal.end(), std::greater<>());
  double sum_joint = 0.0;
  double sum_marginal = 0.0;
  for (int k = 0; k < n; ++k) {
    sum_joint += joint[k];
    sum_marginal += marginal[k];
    if (sum_joint > sum_marginal + kStateTolerance) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Entropies

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    double lambda = eigenvalues(i);
    if (lambda < -kStateTolerance) {
      throw Error(ErrorCode::InvalidState, "negative eigenvalue " + std::to_string(lambda) + " in entropy");
    }
    if (lambda <= 0.0) continue;
    s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityOperator& rho) { return entropy_of_spectrum(rho.eigenvalues()); }

double quantum_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "relative entropy of states with different dimensions");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> sig(sigma.matrix());
  const auto& w = sig.eigenvalues();
  const auto& v = sig.eigenvectors();
  // -Tr(rho log sigma) = -sum_k <v_k|rho|v_k> log w_k over the support of sigma.
  double cross = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const double weight = (v.col(k).adjoint() * rho.matrix() * v.col(k))(0, 0).real();
    if (w(k) <= kStateTolerance) {
      if (weight > kStateTolerance) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= weight * std::log2(w(k));
  }
  const double s = -von_neumann_entropy(rho) + cross;
  return std::max(s, 0.0);
}

// ---------------------------------------------------------------------------
// Bell basis and CHSH

ComplexVector bell_ket(int k) {
  if (k < 1 || k > 4) throw Error(ErrorCode::IndexOutOfRange, "Bell state index must be in 1..4");
  const double h = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  switch (k) {
    case 1: v(0) = h; v(3) = h; break;
    case 2: v(0) = h; v(3) = -h; break;
    case 3: v(1) = h; v(2) = h; break;
    case 4: v(1) = h; v(2) = -h; break;
  }
  return v;
}

DensityOperator bell_state(int k) { return DensityOperator::from_ket(bell_ket(k), Dims{2, 2}); }

namespace {

// cos(phi) sigma_z + sin(phi) sigma_x
ComplexMatrix spin_observable(double phi) {
  ComplexMatrix m(2, 2);
  m << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
  return m;
}

}  // namespace

double chsh_value(const DensityOperator& rho, double theta) {
  if (rho.dims() != Dims{2, 2}) throw Error(ErrorCode::InvalidDimension, "CHSH needs a 2x2 state");
  const ComplexMatrix a1 = spin_observable(0.0);
  const ComplexMatrix a2 = spin_observable(2.0 * theta);
  const ComplexMatrix b1 = -spin_observable(theta);
  const ComplexMatrix b2 = -spin_observable(-theta);
  const ComplexMatrix op = kron(a1, b1 + b2) + kron(a2, b1 - b2);
  return (rho.matrix() * op).trace().real();
}

}  // namespace entgeo
