#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "entgeo/convexgeo.hpp"

namespace entgeo {

namespace {

ComplexMatrix negative_part(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
  const RealVector negative = es.eigenvalues().cwiseMin(0.0);
  return es.eigenvectors() * negative.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix clip_negative(const ComplexMatrix& m) { return hermitian_part(m) - negative_part(m); }

ComplexMatrix project_psd(const ComplexMatrix& m, const Dims&) { return clip_negative(m); }

ComplexMatrix project_pt_psd(const ComplexMatrix& m, const Dims& dims) {
  return partial_transpose(clip_negative(partial_transpose(m, dims, 0)), dims, 0);
}

ComplexMatrix project_affine(const ComplexMatrix& m, const Dims&) {
  const Eigen::Index n = m.rows();
  ComplexMatrix h = hermitian_part(m);
  const double shift = (1.0 - h.trace().real()) / static_cast<double>(n);
  h.diagonal().array() += shift;
  return h;
}

bool is_exact_pair(const Dims& dims) {
  if (dims.size() != 2) return false;
  const int lo = std::min(dims[0], dims[1]);
  const int hi = std::max(dims[0], dims[1]);
  return lo == 2 && (hi == 2 || hi == 3);
}

// Smallest t >= 0 with (x + t I/n)/(1 + t) and its partial transpose both PSD.
ComplexMatrix nudge_inside(const ComplexMatrix& x, const Dims& dims) {
  const double n = static_cast<double>(x.rows());
  const double worst = std::min(hermitian_eigenvalues(x).minCoeff(),
                                hermitian_eigenvalues(partial_transpose(x, dims, 0)).minCoeff());
  if (worst >= 0.0) return x;
  const double t = -worst * n;
  ComplexMatrix y = x;
  y.diagonal().array() += t / n;
  return y / (1.0 + t);
}

// <U, rho> - |U|^2 / 2 - sum_i h_i(u_i) with U = sum_i u_i, where the support
// functions vanish on the two cones and equal tr(u)/n on the trace-one plane.
double dual_bound(const ComplexMatrix (&increments)[3], const ComplexMatrix& target) {
  const ComplexMatrix u = increments[0] + increments[1] + increments[2];
  const double n = static_cast<double>(target.rows());
  const double value = (u.adjoint() * target).trace().real() - 0.5 * u.squaredNorm() -
                       increments[2].trace().real() / n;
  return std::sqrt(2.0 * std::max(0.0, value));
}

}  // namespace

PptProjection project_to_ppt_set(const DensityOperator& rho, double tol, long max_iter) {
  if (!rho.is_bipartite()) throw Error(ErrorCode::InvalidDimension, "PPT projection needs a bipartite state");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "PPT projection tolerance must be positive");
  const Dims& dims = rho.dims();
  const ComplexMatrix& target = rho.matrix();
  const Eigen::Index n = target.rows();

  using Projector = ComplexMatrix (*)(const ComplexMatrix&, const Dims&);
  const Projector projectors[3] = {project_psd, project_pt_psd, project_affine};
  ComplexMatrix increments[3] = {ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};

  PptProjection out{rho, 0.0, 0, {}, is_exact_pair(dims)};
  ComplexMatrix x = target;
  double moved = 0.0;
  long sweep = 0;
  for (; sweep < max_iter; ++sweep) {
    const ComplexMatrix start = x;
    for (int s = 0; s < 3; ++s) {
      const ComplexMatrix shifted = x + increments[s];
      const ComplexMatrix y = projectors[s](shifted, dims);
      increments[s] = shifted - y;
      x = y;
    }
    moved = (x - start).norm();
    out.distance_trace.push_back(dual_bound(increments, target));
    if (moved < tol) break;
  }
  if (sweep == max_iter) {
    throw NotConverged("PPT projection did not converge: last sweep moved " + std::to_string(moved), moved,
                       max_iter);
  }

  out.sigma = DensityOperator(nudge_inside(x, dims), dims);
  out.distance = (target - out.sigma.matrix()).norm();
  out.iterations = sweep + 1;
  return out;
}

}  // namespace entgeo
