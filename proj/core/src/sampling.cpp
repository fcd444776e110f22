#include <cmath>
#include <random>
#include <string>

#include "entgeo/qstate.hpp"

namespace entgeo {

namespace {

constexpr long kMaxRejections = 1'000'000;

ComplexMatrix gaussian_matrix(int rows, int cols, CounterRng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

DensityOperator mixed_hs(const Dims& dims, CounterRng& rng) {
  const int n = product(dims);
  const ComplexMatrix g = gaussian_matrix(n, n, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(hermitian_part(m), dims);
}

DensityOperator separable(const Dims& dims, CounterRng& rng) {
  std::uniform_int_distribution<int> terms_dist(1, kMaxSeparableTerms);
  const int terms = terms_dist(rng);
  const int n = product(dims);
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int t = 0; t < terms; ++t) {
    ComplexVector ket = random_ket(dims[0], rng);
    for (std::size_t s = 1; s < dims.size(); ++s) {
      const ComplexVector factor = random_ket(dims[s], rng);
      ComplexVector joined(ket.size() * factor.size());
      for (Eigen::Index i = 0; i < ket.size(); ++i) joined.segment(i * factor.size(), factor.size()) = ket(i) * factor;
      ket = std::move(joined);
    }
    acc += ket * ket.adjoint();
  }
  acc /= static_cast<double>(terms);
  return DensityOperator(hermitian_part(acc), dims);
}

DensityOperator entangled_filtered(const Dims& dims, CounterRng& rng) {
  if (dims.size() != 2 || product(dims) > 9) {
    throw Error(ErrorCode::UnsupportedDims, "entangled-filtered sampling needs bipartite dims with product <= 9");
  }
  for (long attempt = 0; attempt < kMaxRejections; ++attempt) {
    DensityOperator rho = mixed_hs(dims, rng);
    if (!is_ppt(rho).ppt) return rho;
  }
  throw NotConverged("entangled-filtered sampler found no NPT state", 0.0, kMaxRejections);
}

}  // namespace

ComplexVector random_ket(int d, CounterRng& rng) {
  if (d < 1) throw Error(ErrorCode::InvalidDimension, "ket dimension must be positive");
  ComplexVector v = gaussian_matrix(d, 1, rng).col(0);
  return v / v.norm();
}

const char* to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::Separable: return "separable";
    case SampleKind::EntangledFiltered: return "entangled-filtered";
    case SampleKind::PureHaar: return "pure-haar";
    case SampleKind::MixedHs: return "mixed-hs";
  }
  return "unknown";
}

SampleKind sample_kind_from_string(const std::string& name) {
  if (name == "separable") return SampleKind::Separable;
  if (name == "entangled-filtered" || name == "entangled") return SampleKind::EntangledFiltered;
  if (name == "pure-haar" || name == "pure") return SampleKind::PureHaar;
  if (name == "mixed-hs" || name == "mixed") return SampleKind::MixedHs;
  throw Error(ErrorCode::InvalidArgument, "unknown sample kind '" + name + "'");
}

DensityOperator sample_state(SampleKind kind, const Dims& dims, CounterRng& rng) {
  if (dims.empty() || product(dims) < 1) throw Error(ErrorCode::InvalidDimension, "empty dims");
  switch (kind) {
    case SampleKind::PureHaar:
      return DensityOperator::from_ket(random_ket(product(dims), rng), dims);
    case SampleKind::MixedHs:
      return mixed_hs(dims, rng);
    case SampleKind::Separable:
      return separable(dims, rng);
    case SampleKind::EntangledFiltered:
      return entangled_filtered(dims, rng);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown sample kind");
}

DensityOperator sample_state(SampleKind kind, const Dims& dims, std::uint64_t seed, std::uint64_t trial) {
  CounterRng rng = CounterRng::keyed(seed, {trial});
  return sample_state(kind, dims, rng);
}

}  // namespace entgeo
