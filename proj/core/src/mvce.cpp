#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "entgeo/convexgeo.hpp"

namespace entgeo {

namespace {

constexpr long kRecomputeEvery = 200;

void check_rank(const RealMatrix& points) {
  const Eigen::Index n = points.rows();
  const Eigen::Index m = points.cols();
  const RealVector mean = points.rowwise().mean();
  const RealMatrix centered = points.colwise() - mean;
  Eigen::JacobiSVD<RealMatrix> svd(centered, Eigen::ComputeFullU);
  const RealVector& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-10 * scale) ++rank;
  if (rank < n) {
    const RealMatrix missing = svd.matrixU().rightCols(n - rank);
    throw DegeneratePointSet("point set spans an affine subspace of dimension " + std::to_string(rank) +
                                 " in dimension " + std::to_string(n) + " (" + std::to_string(m) +
                                 " points)",
                             missing);
  }
}

RealVector lifted_norms(const RealMatrix& q, const RealMatrix& x_inv) {
  return (q.array() * (x_inv * q).array()).colwise().sum().transpose();
}

}  // namespace

Ellipsoid fit_mvce(const RealMatrix& points, double eps, long max_iter) {
  if (!(eps > 0.0 && eps <= 0.1)) throw Error(ErrorCode::InvalidArgument, "mvce eps must lie in (0, 0.1]");
  const Eigen::Index n = points.rows();
  const Eigen::Index m = points.cols();
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "mvce needs points of dimension >= 1");
  if (!points.allFinite()) throw Error(ErrorCode::InvalidArgument, "mvce points must be finite");
  check_rank(points);

  RealMatrix q(n + 1, m);
  q.topRows(n) = points;
  q.row(n).setOnes();

  const double dn = static_cast<double>(n);
  // Covering target in lifted form: (x - c)^T A (x - c) = (M - 1) / n.
  const double upper = 1.0 + dn * (1.0 + eps);
  const double lower = (dn + 1.0) * (1.0 - eps);

  RealVector u = RealVector::Constant(m, 1.0 / static_cast<double>(m));
  RealMatrix x_inv = (q * u.asDiagonal() * q.transpose()).inverse();
  RealVector big_m = lifted_norms(q, x_inv);

  long iter = 0;
  for (;; ++iter) {
    Eigen::Index j = 0;
    big_m.maxCoeff(&j);
    Eigen::Index k = -1;
    for (Eigen::Index i = 0; i < m; ++i)
      if (u(i) > 0.0 && (k < 0 || big_m(i) < big_m(k))) k = i;

    if (big_m(j) <= upper && big_m(k) >= lower) {
      // Confirm against a fresh inverse before accepting.
      x_inv = (q * u.asDiagonal() * q.transpose()).inverse();
      big_m = lifted_norms(q, x_inv);
      if (big_m.maxCoeff(&j) <= upper) break;
    }
    if (iter >= max_iter) {
      throw NotConverged("mvce did not converge: max membership " + std::to_string((big_m(j) - 1.0) / dn),
                         (big_m(j) - 1.0) / dn - 1.0, iter);
    }

    double step = 0.0;
    Eigen::Index idx = j;
    if (big_m(j) - (dn + 1.0) > (dn + 1.0) - big_m(k)) {
      step = (big_m(j) - dn - 1.0) / ((dn + 1.0) * (big_m(j) - 1.0));
    } else {
      idx = k;
      step = (big_m(k) - dn - 1.0) / ((dn + 1.0) * (big_m(k) - 1.0));
      step = std::max(step, -u(k) / (1.0 - u(k)));
    }

    u *= (1.0 - step);
    u(idx) += step;
    for (Eigen::Index i = 0; i < m; ++i)
      if (u(i) < 0.0) u(i) = 0.0;

    const RealVector qi = q.col(idx);
    x_inv /= (1.0 - step);
    const RealVector xq = x_inv * qi;
    const double den = 1.0 + step * qi.dot(xq);
    x_inv.noalias() -= (step / den) * xq * xq.transpose();

    if ((iter + 1) % kRecomputeEvery == 0) {
      x_inv = (q * u.asDiagonal() * q.transpose()).inverse();
      big_m = lifted_norms(q, x_inv);
    } else {
      const RealVector qx = q.transpose() * xq;
      big_m = big_m / (1.0 - step) - (step / den) * qx.cwiseAbs2();
    }
  }

  const RealVector c = points * u;
  const RealMatrix scatter = points * u.asDiagonal() * points.transpose() - c * c.transpose();
  RealMatrix a = scatter.inverse() / dn;
  a = (0.5 * (a + a.transpose())).eval();

  // Rounding between the lifted and explicit forms can exceed the target by ~1e-13.
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const RealVector v = points.col(i) - c;
    worst = std::max(worst, v.dot(a * v));
  }
  if (worst > 1.0 + eps) a *= (1.0 + eps) / worst;

  return Ellipsoid(c, a);
}

Ellipsoid fit_mvce(const std::vector<RealVector>& points, double eps, long max_iter) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "mvce needs at least one point");
  const Eigen::Index n = points.front().size();
  RealMatrix p(n, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "mvce points differ in dimension");
    p.col(static_cast<Eigen::Index>(i)) = points[i];
  }
  return fit_mvce(p, eps, max_iter);
}

}  // namespace entgeo
