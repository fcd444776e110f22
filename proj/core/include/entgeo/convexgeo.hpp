#pragma once

#include <vector>

#include "entgeo/qstate.hpp"
#include "entgeo/types.hpp"

namespace entgeo {

/// The set {x : (x - center)^T shape (x - center) <= 1}.
///
/// `shape` must be symmetric within 1e-10 and positive definite; the
/// constructor throws `Error{InvalidArgument}` otherwise. The
/// eigendecomposition of `shape` is computed once and reused by projections.
class Ellipsoid {
 public:
  Ellipsoid(RealVector center, RealMatrix shape);

  const RealVector& center() const noexcept { return center_; }
  const RealMatrix& shape() const noexcept { return shape_; }
  int dim() const noexcept { return static_cast<int>(center_.size()); }

  // (x - center)^T shape (x - center).
  double membership(const RealVector& x) const;
  bool contains(const RealVector& x) const { return membership(x) <= 1.0; }

  // log det(shape^{-1}); volume is proportional to its exponential square root.
  double log_det_inverse_shape() const;

  // shape = eigenvectors * diag(eigenvalues) * eigenvectors^T, ascending.
  const RealVector& eigenvalues() const noexcept { return eigenvalues_; }
  const RealMatrix& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  RealVector center_;
  RealMatrix shape_;
  RealVector eigenvalues_;
  RealMatrix eigenvectors_;
};

inline constexpr double kDefaultMvceEps = 1e-6;
inline constexpr long kDefaultMvceMaxIter = 2'000'000;

/// Minimum-volume ellipsoid covering `points`, to within (1 + eps) in every
/// membership value.
///
/// Khachiyan barycentric ascent on the lifted points (x, 1) with away steps.
/// Needs at least n + 1 affinely independent points in dimension n; a
/// rank-deficient set throws `DegeneratePointSet` carrying the missing
/// directions, and hitting `max_iter` throws `NotConverged`.
Ellipsoid fit_mvce(const std::vector<RealVector>& points, double eps = kDefaultMvceEps,
                   long max_iter = kDefaultMvceMaxIter);

// Same, with one point per column.
Ellipsoid fit_mvce(const RealMatrix& points, double eps = kDefaultMvceEps,
                   long max_iter = kDefaultMvceMaxIter);

struct ProjectionResult {
  RealVector projection;
  double distance = 0.0;
};

/// Euclidean projection onto the ellipsoid. Points inside are returned as is.
/// Exterior points solve the secular equation for the Lagrange multiplier in
/// the eigenbasis of the shape matrix.
ProjectionResult project_to_ellipsoid(const Ellipsoid& e, const RealVector& r);

/// Hyperplane {x : normal . x = offset} tangent to the ellipsoid at the
/// projection of an exterior point. The ellipsoid lies on the side
/// normal . x <= offset and the exterior point strictly on the other.
struct PseudoWitness {
  RealVector normal;
  double offset = 0.0;
  RealVector tangent_point;

  double value(const RealVector& x) const { return normal.dot(x); }
  bool separates(const RealVector& x) const { return value(x) > offset; }
};

// Throws Error{NoWitness} when r is inside the ellipsoid.
PseudoWitness tangent_pseudo_witness(const Ellipsoid& e, const RealVector& r);

/// max over unit w of  w . r - h(w),  with h(w) = w . center + sqrt(w^T shape^{-1} w)
/// the support function of the ellipsoid. Zero for interior r.
/// Evaluated without reference to the primal projection.
double dual_distance_certificate(const Ellipsoid& e, const RealVector& r);

inline constexpr double kDefaultPptTol = 1e-9;
inline constexpr long kDefaultPptMaxIter = 50'000;

struct PptProjection {
  DensityOperator sigma;
  // Frobenius norm of rho - sigma.
  double distance = 0.0;
  long iterations = 0;
  // Dual lower bound on the distance after each sweep. Dykstra is block
  // coordinate ascent on the dual, so the trace never decreases, and every
  // entry is at most `distance` up to rounding.
  std::vector<double> distance_trace;
  // True for 2x2 and 2x3 (either order), where PPT equals separable.
  bool exact = false;
};

/// Frobenius projection of rho onto the PPT states by Dykstra's algorithm over
/// the PSD cone, the cone of matrices with PSD partial transpose on A, and the
/// Hermitian unit-trace plane. Stops when one sweep moves the iterate by less
/// than `tol`; throws `NotConverged` after `max_iter` sweeps.
///
/// The final iterate can miss positivity by about `tol`; it is mixed with the
/// maximally mixed state just enough to become a valid density operator.
PptProjection project_to_ppt_set(const DensityOperator& rho, double tol = kDefaultPptTol,
                                 long max_iter = kDefaultPptMaxIter);

}  // namespace entgeo
