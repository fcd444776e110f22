#include "entgeo/infochannel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace entgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKrausTol = 1e-10;

// D(column x || q) in bits.
double column_divergence(const RealMatrix& t, Eigen::Index x, const RealVector& q) {
  double d = 0.0;
  for (Eigen::Index y = 0; y < t.rows(); ++y) {
    const double v = t(y, x);
    if (v <= 0.0) continue;
    if (q(y) <= 0.0) return kInf;
    d += v * std::log2(v / q(y));
  }
  return d;
}

}  // namespace

double shannon_entropy(const ProbabilityVector& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  return h;
}

double relative_entropy(const ProbabilityVector& p, const ProbabilityVector& q) {
  if (p.size() != q.size()) throw Error(ErrorCode::DimensionMismatch, "distributions differ in length");
  double d = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

TransitionMatrix::TransitionMatrix(RealMatrix columns) : t_(std::move(columns)) {
  if (t_.rows() < 1 || t_.cols() < 1) throw Error(ErrorCode::InvalidDimension, "transition matrix is empty");
  for (Eigen::Index x = 0; x < t_.cols(); ++x) {
    if (!ProbabilityVector::is_valid(t_.col(x)))
      throw Error(ErrorCode::InvalidArgument, "transition matrix column " + std::to_string(x) + " is not a distribution");
  }
}

ProbabilityVector TransitionMatrix::output(const ProbabilityVector& p) const {
  if (p.size() != inputs()) throw Error(ErrorCode::DimensionMismatch, "input distribution length differs from channel inputs");
  RealVector q = t_ * p.probs();
  q /= q.sum();
  return ProbabilityVector(q);
}

ProbabilityVector TransitionMatrix::column(int x) const {
  if (x < 0 || x >= inputs()) throw Error(ErrorCode::IndexOutOfRange, "input symbol out of range");
  return ProbabilityVector(RealVector(t_.col(x)));
}

TransitionMatrix TransitionMatrix::identity(int n) { return TransitionMatrix(RealMatrix::Identity(n, n)); }

TransitionMatrix TransitionMatrix::binary_symmetric(double flip) {
  if (!(flip >= 0.0 && flip <= 1.0)) throw Error(ErrorCode::InvalidArgument, "flip probability must lie in [0, 1]");
  RealMatrix t(2, 2);
  t << 1.0 - flip, flip, flip, 1.0 - flip;
  return TransitionMatrix(t);
}

TransitionMatrix TransitionMatrix::binary_erasure(double erasure) {
  if (!(erasure >= 0.0 && erasure <= 1.0)) throw Error(ErrorCode::InvalidArgument, "erasure probability must lie in [0, 1]");
  RealMatrix t(3, 2);
  t << 1.0 - erasure, 0.0, 0.0, 1.0 - erasure, erasure, erasure;
  return TransitionMatrix(t);
}

double mutual_information(const ProbabilityVector& p, const TransitionMatrix& t) {
  if (p.size() != t.inputs()) throw Error(ErrorCode::DimensionMismatch, "input distribution length differs from channel inputs");
  const RealVector q = t.matrix() * p.probs();
  double info = 0.0;
  for (int x = 0; x < t.inputs(); ++x)
    if (p[x] > 0.0) info += p[x] * column_divergence(t.matrix(), x, q);
  return std::max(info, 0.0);
}

CapacityResult dmc_capacity(const TransitionMatrix& t, double tol, long max_iter) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "capacity tolerance must be positive");
  const RealMatrix& m = t.matrix();
  const Eigen::Index nx = m.cols();
  RealVector p = RealVector::Constant(nx, 1.0 / static_cast<double>(nx));
  RealVector d(nx);

  long iter = 0;
  double lower = 0.0;
  double upper = 0.0;
  for (;; ++iter) {
    const RealVector q = m * p;
    for (Eigen::Index x = 0; x < nx; ++x) d(x) = column_divergence(m, x, q);
    lower = p.dot(d);
    upper = d.maxCoeff();
    if (upper - lower < tol) break;
    if (iter >= max_iter) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "capacity iteration did not converge: gap %.3g after %ld iterations",
                    upper - lower, iter);
      throw NotConverged(msg, upper - lower, iter);
    }
    for (Eigen::Index x = 0; x < nx; ++x) p(x) *= std::exp2(d(x) - upper);
    p /= p.sum();
  }

  CapacityResult out;
  out.capacity = std::max(lower, 0.0);
  out.input = ProbabilityVector(p);
  out.divergences = d;
  out.gap = upper - lower;
  out.iterations = iter;
  return out;
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, Dims dims_in, Dims dims_out)
    : ops_(std::move(operators)), dims_in_(std::move(dims_in)), dims_out_(std::move(dims_out)) {
  if (ops_.empty()) throw Error(ErrorCode::InvalidArgument, "channel needs at least one Kraus operator");
  if (dims_in_.empty() || dims_out_.empty() || product(dims_in_) < 1 || product(dims_out_) < 1)
    throw Error(ErrorCode::InvalidDimension, "channel dims must be positive");
  const int din = product(dims_in_);
  const int dout = product(dims_out_);
  ComplexMatrix sum = ComplexMatrix::Zero(din, din);
  for (const ComplexMatrix& a : ops_) {
    if (a.rows() != dout || a.cols() != din)
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator shape does not match channel dims");
    sum += a.adjoint() * a;
  }
  const double defect = (sum - ComplexMatrix::Identity(din, din)).cwiseAbs().maxCoeff();
  if (defect > kKrausTol)
    throw Error(ErrorCode::InvalidArgument, "Kraus operators are not complete: defect " + std::to_string(defect));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators)
    : KrausChannel(operators, Dims{operators.empty() ? 0 : static_cast<int>(operators.front().cols())},
                   Dims{operators.empty() ? 0 : static_cast<int>(operators.front().rows())}) {}

ComplexMatrix KrausChannel::apply(const ComplexMatrix& m) const {
  if (m.rows() != dim_in() || m.cols() != dim_in())
    throw Error(ErrorCode::DimensionMismatch, "input does not match channel input dimension");
  ComplexMatrix out = ComplexMatrix::Zero(dim_out(), dim_out());
  for (const ComplexMatrix& a : ops_) out.noalias() += a * m * a.adjoint();
  return out;
}

KrausChannel KrausChannel::identity(int d) { return KrausChannel({ComplexMatrix::Identity(d, d)}); }

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.dim_in())
    throw Error(ErrorCode::DimensionMismatch, "state does not match channel input");
  return DensityOperator(ch.apply(rho.matrix()), ch.dims_out());
}

ComplexMatrix choi_matrix(const LinearMap& map, int d_in) {
  if (d_in < 1) throw Error(ErrorCode::InvalidDimension, "input dimension must be positive");
  // sum_ij map(|i><j|) (x) |i><j| / d_in
  ComplexMatrix choi;
  for (int i = 0; i < d_in; ++i) {
    for (int j = 0; j < d_in; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d_in, d_in);
      e(i, j) = 1.0;
      const ComplexMatrix image = map(e);
      if (choi.size() == 0) choi = ComplexMatrix::Zero(image.rows() * d_in, image.cols() * d_in);
      choi += kron(image, e) / static_cast<double>(d_in);
    }
  }
  return choi;
}

ComplexMatrix choi_matrix(const KrausChannel& ch) {
  return choi_matrix([&ch](const ComplexMatrix& m) { return ch.apply(m); }, ch.dim_in());
}

ChoiCheck choi_cp_check(const LinearMap& map, int d_in, double tol) {
  const double low = hermitian_eigenvalues(hermitian_part(choi_matrix(map, d_in))).minCoeff();
  return {low >= -tol, low};
}

ChoiCheck choi_cp_check(const KrausChannel& ch, double tol) {
  return choi_cp_check([&ch](const ComplexMatrix& m) { return ch.apply(m); }, ch.dim_in(), tol);
}

QuantumEnsemble::QuantumEnsemble(ProbabilityVector weights, std::vector<DensityOperator> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (static_cast<std::size_t>(weights_.size()) != states_.size())
    throw Error(ErrorCode::DimensionMismatch, "ensemble weights and states differ in length");
  for (const DensityOperator& s : states_)
    if (s.dims() != states_.front().dims()) throw Error(ErrorCode::DimensionMismatch, "ensemble states differ in dims");
}

DensityOperator QuantumEnsemble::average() const {
  ComplexMatrix avg = ComplexMatrix::Zero(states_.front().dim(), states_.front().dim());
  for (std::size_t i = 0; i < states_.size(); ++i) avg += weights_[static_cast<int>(i)] * states_[i].matrix();
  return DensityOperator(hermitian_part(avg), states_.front().dims());
}

double holevo_chi(const QuantumEnsemble& ens) {
  double mixed = 0.0;
  for (std::size_t i = 0; i < ens.states().size(); ++i)
    mixed += ens.weights()[static_cast<int>(i)] * von_neumann_entropy(ens.states()[i]);
  return std::max(von_neumann_entropy(ens.average()) - mixed, 0.0);
}

ErasureCapacities erasure_capacities(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorCode::InvalidArgument, "erasure probability must lie in [0, 1]");
  return {1.0 - eps, 2.0 * (1.0 - eps)};
}

KrausChannel erasure_channel(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorCode::InvalidArgument, "erasure probability must lie in [0, 1]");
  ComplexMatrix keep = ComplexMatrix::Zero(3, 2);
  keep(0, 0) = keep(1, 1) = std::sqrt(1.0 - eps);
  ComplexMatrix lose0 = ComplexMatrix::Zero(3, 2);
  lose0(2, 0) = std::sqrt(eps);
  ComplexMatrix lose1 = ComplexMatrix::Zero(3, 2);
  lose1(2, 1) = std::sqrt(eps);
  return KrausChannel({keep, lose0, lose1}, Dims{2}, Dims{3});
}

TransitionMatrix induced_transition_matrix(const KrausChannel& ch) {
  const int din = ch.dim_in();
  const int dout = ch.dim_out();
  RealMatrix t(dout, din);
  for (int x = 0; x < din; ++x) {
    ComplexMatrix e = ComplexMatrix::Zero(din, din);
    e(x, x) = 1.0;
    const ComplexMatrix out = ch.apply(e);
    for (int y = 0; y < dout; ++y) t(y, x) = std::max(out(y, y).real(), 0.0);
    t.col(x) /= t.col(x).sum();
  }
  return TransitionMatrix(t);
}

}  // namespace entgeo
