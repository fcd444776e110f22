#include "entgeo/entdetect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

namespace entgeo {

namespace {

bool is_prime(int d) {
  if (d < 2) return false;
  for (int k = 2; k * k <= d; ++k)
    if (d % k == 0) return false;
  return true;
}

void check_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "norm eta must lie in (0, 1]");
}

void require_oracle_dims(int d_a, int d_b) {
  const int lo = std::min(d_a, d_b);
  const int hi = std::max(d_a, d_b);
  if (lo != 2 || (hi != 2 && hi != 3))
    throw Error(ErrorCode::UnsupportedDims, "PPT labels are exact only for 2x2 and 2x3");
}

// Runs body(i) for i in [0, count) on up to worker_count(count) threads; the
// first exception is rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const int workers = worker_count(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

int worker_count(std::size_t tasks) {
  long cap = static_cast<long>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("ENTGEO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) cap = v;
  }
  return static_cast<int>(std::max<long>(1, std::min<long>(cap, static_cast<long>(tasks))));
}

RealVector normalized_bloch(const ComplexMatrix& hermitian) {
  const int n = static_cast<int>(hermitian.rows());
  return to_bloch(hermitian).coords / pure_state_radius(n);
}

RealVector normalized_bloch(const DensityOperator& rho) { return normalized_bloch(rho.matrix()); }

double frobenius_to_normalized_bloch(int n) { return (n / std::sqrt(2.0)) / pure_state_radius(n); }

std::vector<ComplexVector> local_axis_states(int d) {
  if (!is_prime(d)) throw Error(ErrorCode::UnsupportedDims, "local axis states need a prime dimension, got " + std::to_string(d));
  std::vector<ComplexVector> kets;
  for (int k = 0; k < d; ++k) kets.push_back(ComplexVector::Unit(d, k));
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  if (d == 2) {
    kets.push_back((ComplexVector(2) << s, s).finished());
    kets.push_back((ComplexVector(2) << s, -s).finished());
    kets.push_back((ComplexVector(2) << s, Complex(0.0, s)).finished());
    kets.push_back((ComplexVector(2) << s, Complex(0.0, -s)).finished());
    return kets;
  }
  for (int b = 0; b < d; ++b) {
    for (int m = 0; m < d; ++m) {
      ComplexVector v(d);
      for (int k = 0; k < d; ++k) {
        const int phase = (b * k * k + m * k) % d;
        v(k) = std::polar(s, 2.0 * std::numbers::pi * phase / d);
      }
      kets.push_back(v);
    }
  }
  return kets;
}

RealMatrix SeparableEnsemble::as_matrix() const {
  if (vectors.empty()) return RealMatrix();
  RealMatrix m(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return m;
}

SeparableEnsemble separable_axis_ensemble(int d_a, int d_b, double eta) {
  check_eta(eta);
  auto factors = [eta](int d) {
    std::vector<ComplexMatrix> out;
    const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    for (const ComplexVector& v : local_axis_states(d)) out.push_back(eta * (v * v.adjoint()) + (1.0 - eta) * mixed);
    return out;
  };
  const std::vector<ComplexMatrix> fa = factors(d_a);
  const std::vector<ComplexMatrix> fb = factors(d_b);

  SeparableEnsemble ens;
  ens.norm = eta;
  ens.dims = {d_a, d_b};
  for (const ComplexMatrix& a : fa) {
    for (const ComplexMatrix& b : fb) {
      RealVector x = normalized_bloch(kron(a, b));
      const bool seen = std::any_of(ens.vectors.begin(), ens.vectors.end(),
                                    [&](const RealVector& y) { return (x - y).norm() < 1e-12; });
      if (!seen) ens.vectors.push_back(std::move(x));
    }
  }
  return ens;
}

SeparableModel fit_separable_mvce(int d_a, int d_b, double eta, double eps) {
  const SeparableEnsemble ens = separable_axis_ensemble(d_a, d_b, eta);
  return SeparableModel{fit_mvce(ens.as_matrix(), eps), ens.dims, eta, eps, static_cast<int>(ens.vectors.size())};
}

const char* to_string(Label label) { return label == Label::Separable ? "separable" : "entangled"; }

Classification classify(const DensityOperator& rho, const Ellipsoid& e) {
  const RealVector x = normalized_bloch(rho);
  if (x.size() != e.dim()) throw Error(ErrorCode::DimensionMismatch, "state dimension does not match the ellipsoid");
  Classification c;
  c.membership = e.membership(x);
  if (c.membership > 1.0) c.distance = project_to_ellipsoid(e, x).distance;
  if (c.distance > kDetectionThreshold) c.label = Label::Entangled;
  return c;
}

Classification classify(const DensityOperator& rho, const SeparableModel& model) {
  if (rho.dims() != model.dims) throw Error(ErrorCode::DimensionMismatch, "state dims do not match the model dims");
  return classify(rho, model.ellipsoid);
}

DensityOperator horodecki_state(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::InvalidArgument, "Horodecki parameter a must lie in [0, 1]");
  ComplexMatrix m = ComplexMatrix::Zero(9, 9);
  for (int i : {0, 4, 8})
    for (int j : {0, 4, 8}) m(i, j) = a;
  for (int i : {1, 2, 3, 5, 7}) m(i, i) = a;
  m(6, 6) = m(8, 8) = (1.0 + a) / 2.0;
  m(6, 8) = m(8, 6) = std::sqrt(1.0 - a * a) / 2.0;
  return DensityOperator(m / (8.0 * a + 1.0), Dims{3, 3});
}

std::vector<double> bound_entanglement_a_grid(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "a grid needs at least one point");
  if (n == 1) return {1.0};
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = 0.001 + (1.0 - 0.001) * i / (n - 1);
  return grid;
}

std::vector<BenchmarkRow> benchmark_fp_fn(int d_a, int d_b, const std::vector<double>& eta_grid, int n_per_class,
                                          std::uint64_t seed, double eps) {
  require_oracle_dims(d_a, d_b);
  if (n_per_class < 1) throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
  for (double eta : eta_grid) check_eta(eta);
  const Dims dims{d_a, d_b};
  const std::size_t n = static_cast<std::size_t>(n_per_class);

  std::vector<RealVector> separable(n), entangled(n);
  parallel_for(2 * n, [&](std::size_t i) {
    const bool ent = i >= n;
    const std::size_t trial = ent ? i - n : i;
    CounterRng rng = CounterRng::keyed(seed, {ent ? 1u : 0u, trial});
    const DensityOperator rho = sample_state(ent ? SampleKind::EntangledFiltered : SampleKind::Separable, dims, rng);
    (ent ? entangled : separable)[trial] = normalized_bloch(rho);
  });

  std::vector<BenchmarkRow> rows(eta_grid.size());
  parallel_for(eta_grid.size(), [&](std::size_t k) {
    const SeparableModel model = fit_separable_mvce(d_a, d_b, eta_grid[k], eps);
    BenchmarkRow row{eta_grid[k], 0, 0, n_per_class, seed};
    auto detected = [&](const RealVector& x) {
      return model.ellipsoid.membership(x) > 1.0 &&
             project_to_ellipsoid(model.ellipsoid, x).distance > kDetectionThreshold;
    };
    for (const RealVector& x : separable)
      if (detected(x)) ++row.false_positives;
    for (const RealVector& x : entangled)
      if (!detected(x)) ++row.false_negatives;
    rows[k] = row;
  });
  return rows;
}

std::vector<BoundEntRow> bound_entanglement_sweep(const std::vector<double>& eta_grid,
                                                  const std::vector<double>& a_grid, double eps) {
  for (double eta : eta_grid) check_eta(eta);
  std::vector<RealVector> states;
  states.reserve(a_grid.size());
  for (double a : a_grid) {
    if (!(a > 0.0 && a <= 1.0)) throw Error(ErrorCode::InvalidArgument, "a grid must lie in (0, 1]");
    states.push_back(normalized_bloch(horodecki_state(a)));
  }

  std::vector<BoundEntRow> rows(eta_grid.size());
  parallel_for(eta_grid.size(), [&](std::size_t k) {
    const SeparableModel model = fit_separable_mvce(3, 3, eta_grid[k], eps);
    BoundEntRow row;
    row.norm = eta_grid[k];
    row.total = static_cast<int>(a_grid.size());
    row.a_values = a_grid;
    for (const RealVector& x : states) {
      const double d = project_to_ellipsoid(model.ellipsoid, x).distance;
      row.distances.push_back(d);
      if (d > kDetectionThreshold) ++row.detected;
    }
    rows[k] = std::move(row);
  });
  return rows;
}

std::vector<DistanceRow> distance_comparison(int n, const std::vector<double>& eta_list, std::uint64_t seed,
                                             double eps) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
  for (double eta : eta_list) check_eta(eta);
  const Dims dims{2, 2};
  const double to_bloch_units = frobenius_to_normalized_bloch(4);

  std::vector<SeparableModel> models;
  for (double eta : eta_list) models.push_back(fit_separable_mvce(2, 2, eta, eps));

  const std::size_t count = static_cast<std::size_t>(n);
  std::vector<DistanceRow> rows(count * eta_list.size());
  parallel_for(count, [&](std::size_t i) {
    const DensityOperator rho = sample_state(SampleKind::EntangledFiltered, dims, seed, i);
    const double exact = project_to_ppt_set(rho).distance * to_bloch_units;
    const RealVector x = normalized_bloch(rho);
    for (std::size_t k = 0; k < models.size(); ++k) {
      rows[i * models.size() + k] = DistanceRow{static_cast<int>(i), exact, eta_list[k],
                                                project_to_ellipsoid(models[k].ellipsoid, x).distance};
    }
  });
  return rows;
}

}  // namespace entgeo
