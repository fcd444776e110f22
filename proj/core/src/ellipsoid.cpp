#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "entgeo/convexgeo.hpp"

namespace entgeo {

namespace {

constexpr double kRootTol = 1e-12;
constexpr int kRootMaxIter = 500;

// Secular function g(mu) = sum lambda_i y_i^2 / (1 + mu lambda_i)^2 - 1 and its derivative.
struct Secular {
  const RealVector& lambda;
  const RealVector& y;

  double value(double mu) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double t = y(i) / (1.0 + mu * lambda(i));
      s += lambda(i) * t * t;
    }
    return s - 1.0;
  }

  double derivative(double mu) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double den = 1.0 + mu * lambda(i);
      s += lambda(i) * lambda(i) * y(i) * y(i) / (den * den * den);
    }
    return -2.0 * s;
  }
};

double solve_secular(const RealVector& lambda, const RealVector& y) {
  const Secular g{lambda, y};
  double lo = 0.0;
  double hi = std::sqrt((y.array().square() / lambda.array()).sum());
  double mu = 0.5 * hi;
  for (int it = 0; it < kRootMaxIter; ++it) {
    const double f = g.value(mu);
    if (f > 0.0) lo = mu; else hi = mu;
    if (f == 0.0 || hi - lo <= kRootTol * std::max(1.0, hi)) return mu;
    const double df = g.derivative(mu);
    double next = df < 0.0 ? mu - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - mu) <= 0.25 * kRootTol * std::max(1.0, mu)) return next;
    mu = next;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "ellipsoid projection did not converge: bracket [" << lo << ", " << hi << "]";
  throw NotConverged(msg.str(), hi - lo, kRootMaxIter);
}

// Objective of the dual along w(tau) ~ (shape^{-1} + tau I)^{-1} (r - c), in the eigenbasis.
double dual_objective(const RealVector& lambda, const RealVector& y, double tau) {
  const RealVector w = (lambda.array() * y.array() / (1.0 + tau * lambda.array())).matrix();
  const double norm = w.norm();
  if (norm == 0.0) return 0.0;
  const double support = std::sqrt((w.array().square() / lambda.array()).sum());
  return (w.dot(y) - support) / norm;
}

}  // namespace

Ellipsoid::Ellipsoid(RealVector center, RealMatrix shape) : center_(std::move(center)), shape_(std::move(shape)) {
  const Eigen::Index n = center_.size();
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "ellipsoid dimension must be positive");
  if (shape_.rows() != n || shape_.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "ellipsoid shape does not match center dimension");
  if (!center_.allFinite() || !shape_.allFinite())
    throw Error(ErrorCode::InvalidArgument, "ellipsoid entries must be finite");
  if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "ellipsoid shape is not symmetric");
  shape_ = (0.5 * (shape_ + shape_.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(shape_);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "ellipsoid shape eigensolve failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  if (!(eigenvalues_(0) > 0.0)) throw Error(ErrorCode::InvalidArgument, "ellipsoid shape is not positive definite");
}

double Ellipsoid::membership(const RealVector& x) const {
  if (x.size() != center_.size()) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match ellipsoid");
  const RealVector v = x - center_;
  return v.dot(shape_ * v);
}

double Ellipsoid::log_det_inverse_shape() const { return -eigenvalues_.array().log().sum(); }

ProjectionResult project_to_ellipsoid(const Ellipsoid& e, const RealVector& r) {
  if (r.size() != e.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match ellipsoid");
  const RealVector& lambda = e.eigenvalues();
  const RealVector y = e.eigenvectors().transpose() * (r - e.center());
  if ((lambda.array() * y.array().square()).sum() <= 1.0) return {r, 0.0};

  const double mu = solve_secular(lambda, y);
  const RealVector scale = (1.0 + mu * lambda.array()).inverse().matrix();
  const RealVector z = y.cwiseProduct(scale);
  const RealVector gap = (y.array() * mu * lambda.array() * scale.array()).matrix();
  return {e.center() + e.eigenvectors() * z, gap.norm()};
}

PseudoWitness tangent_pseudo_witness(const Ellipsoid& e, const RealVector& r) {
  if (e.contains(r)) throw Error(ErrorCode::NoWitness, "point lies inside the ellipsoid");
  const ProjectionResult p = project_to_ellipsoid(e, r);
  PseudoWitness w;
  w.normal = e.shape() * (p.projection - e.center());
  w.offset = 1.0 + w.normal.dot(e.center());
  w.tangent_point = p.projection;
  return w;
}

double dual_distance_certificate(const Ellipsoid& e, const RealVector& r) {
  if (r.size() != e.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension does not match ellipsoid");
  if (e.contains(r)) return 0.0;
  const RealVector& lambda = e.eigenvalues();
  const RealVector y = e.eigenvectors().transpose() * (r - e.center());

  // tau spans (0, inf); the optimum sits where the curve meets the outward normal.
  const double top = 0.5 * std::log((y.array().square() / lambda.array()).sum()) + 2.0;
  const double bottom = top - 60.0;
  constexpr int kGrid = 400;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double t = bottom + (top - bottom) * i / kGrid;
    const double v = dual_objective(lambda, y, std::exp(t));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  const double h = (top - bottom) / kGrid;
  double a = bottom + h * std::max(0, best - 1);
  double b = bottom + h * std::min(kGrid, best + 1);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = dual_objective(lambda, y, std::exp(x1));
  double f2 = dual_objective(lambda, y, std::exp(x2));
  for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = dual_objective(lambda, y, std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = dual_objective(lambda, y, std::exp(x1));
    }
  }
  return std::max({best_value, f1, f2, 0.0});
}

}  // namespace entgeo
