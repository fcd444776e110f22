#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "entgeo/entdetect.hpp"
#include "support.hpp"

using namespace entgeo;

namespace {

double max_abs(const RealVector& v) { return v.cwiseAbs().maxCoeff(); }

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST(LocalAxes, QubitAxesAreSignedPauliDirections) {
  const auto kets = local_axis_states(2);
  ASSERT_EQ(kets.size(), 6u);
  RealMatrix dirs(3, 6);
  for (int i = 0; i < 6; ++i) dirs.col(i) = to_bloch(DensityOperator::from_ket(kets[static_cast<std::size_t>(i)], Dims{2})).coords;
  for (int i = 0; i < 6; ++i) {
    EXPECT_NEAR(dirs.col(i).norm(), 1.0, 1e-14);
    EXPECT_NEAR(dirs.col(i).cwiseAbs().maxCoeff(), 1.0, 1e-14);
  }
}

TEST(LocalAxes, QutritBasesAreMutuallyUnbiased) {
  const auto kets = local_axis_states(3);
  ASSERT_EQ(kets.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) {
      const double overlap = std::norm(kets[i].dot(kets[j]));
      if (i == j) EXPECT_NEAR(overlap, 1.0, 1e-14);
      else if (i / 3 == j / 3) EXPECT_NEAR(overlap, 0.0, 1e-14);
      else EXPECT_NEAR(overlap, 1.0 / 3.0, 1e-14);
    }
  }
}

TEST(LocalAxes, NonPrimeUnsupported) { EXPECT_THROW(local_axis_states(4), Error); }

TEST(Ensemble, QubitPairCountsAndNorms) {
  const SeparableEnsemble ens = separable_axis_ensemble(2, 2, 1.0);
  EXPECT_EQ(ens.vectors.size(), 36u);
  // Pure products lie on the unit sphere of normalized coordinates.
  for (const RealVector& v : ens.vectors) EXPECT_NEAR(v.norm(), 1.0, 1e-10);
}

TEST(Ensemble, Counts) {
  EXPECT_EQ(separable_axis_ensemble(2, 3, 0.7).vectors.size(), 72u);
  EXPECT_EQ(separable_axis_ensemble(3, 3, 0.7).vectors.size(), 144u);
}

TEST(Ensemble, GeneratorsAreProductStates) {
  for (auto dims : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
    const int n = dims.first * dims.second;
    for (double eta : {1.0, 0.4}) {
      for (const RealVector& v : separable_axis_ensemble(dims.first, dims.second, eta).vectors) {
        const ComplexMatrix m = from_bloch({v * pure_state_radius(n), n});
        EXPECT_GE(hermitian_eigenvalues(m).minCoeff(), -1e-10);
        EXPECT_GE(hermitian_eigenvalues(partial_transpose(m, Dims{dims.first, dims.second}, 1)).minCoeff(), -1e-10);
        if (eta == 1.0) EXPECT_NEAR((m * m).trace().real(), 1.0, 1e-10);
      }
    }
  }
}

TEST(Ensemble, LocalFactorsHaveNormEta) {
  // Reduced states of each generator carry the local normalized Bloch norm eta.
  const double eta = 0.35;
  for (const RealVector& v : separable_axis_ensemble(2, 3, eta).vectors) {
    const DensityOperator rho(from_bloch({v * pure_state_radius(6), 6}), Dims{2, 3});
    EXPECT_NEAR(normalized_bloch(partial_trace(rho, 0)).norm(), eta, 1e-10);
    EXPECT_NEAR(normalized_bloch(partial_trace(rho, 1)).norm(), eta, 1e-10);
  }
}

TEST(Ensemble, RejectsBadEta) {
  EXPECT_THROW(separable_axis_ensemble(2, 2, 0.0), Error);
  EXPECT_THROW(separable_axis_ensemble(2, 2, 1.5), Error);
}

TEST(SeparableModel, CoversGeneratorsAndIsCentered) {
  const SeparableModel m = fit_separable_mvce(2, 2, 1.0);
  EXPECT_EQ(m.ensemble_size, 36);
  for (const RealVector& v : separable_axis_ensemble(2, 2, 1.0).vectors) EXPECT_LE(m.ellipsoid.membership(v), 1.0 + m.eps);
  EXPECT_LT(max_abs(m.ellipsoid.center()), 1e-6);
}

TEST(SeparableModel, VolumeShrinksWithEta) {
  double previous = -1e300;
  for (int k = 10; k >= 1; --k) {
    const double eta = k / 10.0;
    const double logdet = fit_separable_mvce(2, 2, eta).ellipsoid.log_det_inverse_shape();
    if (k < 10) EXPECT_LT(logdet, previous);
    previous = logdet;
  }
}

TEST(SeparableModel, EveryPureProductInsideAtFullNorm) {
  std::mt19937_64 gen(41);
  const SeparableModel m = fit_separable_mvce(2, 3, 1.0);
  for (int k = 0; k < 200; ++k) {
    const DensityOperator rho =
        tensor(testing_support::pure_state(Dims{2}, gen), testing_support::pure_state(Dims{3}, gen));
    EXPECT_EQ(classify(rho, m).label, Label::Separable);
  }
}

TEST(Classify, MaximallyMixedIsSeparable) {
  const SeparableModel m = fit_separable_mvce(2, 2, 0.5);
  const Classification c = classify(DensityOperator(ComplexMatrix::Identity(4, 4) / 4.0, Dims{2, 2}), m);
  EXPECT_EQ(c.label, Label::Separable);
  EXPECT_EQ(c.distance, 0.0);
}

TEST(Classify, SingletIsEntangledAtHalfNorm) {
  const Classification c = classify(bell_state(4), fit_separable_mvce(2, 2, 0.5));
  EXPECT_EQ(c.label, Label::Entangled);
  EXPECT_GT(c.distance, 0.0);
}

TEST(Classify, GeneratorsAreSeparable) {
  const SeparableModel m = fit_separable_mvce(2, 2, 0.6);
  const int n = 4;
  for (const RealVector& v : separable_axis_ensemble(2, 2, 0.6).vectors) {
    const DensityOperator rho(from_bloch({v * pure_state_radius(n), n}), Dims{2, 2});
    EXPECT_EQ(classify(rho, m).label, Label::Separable);
  }
}

TEST(Classify, DimsMismatch) {
  EXPECT_THROW(classify(bell_state(4), fit_separable_mvce(2, 3, 0.5)), Error);
}

TEST(Horodecki, ValidStateOnGrid) {
  for (int i = 0; i < 100; ++i) {
    const double a = i / 99.0;
    const DensityOperator rho = horodecki_state(a);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GE(rho.eigenvalues().minCoeff(), -1e-12);
    if (a > 0.0 && a < 1.0) EXPECT_TRUE(is_ppt(rho).ppt) << a;
  }
}

TEST(Horodecki, PrintedEntries) {
  const DensityOperator rho = horodecki_state(0.5);
  EXPECT_NEAR(rho.matrix()(6, 6).real(), 0.15, 1e-15);
  EXPECT_NEAR(rho.matrix()(6, 8).real(), std::sqrt(0.75) / 10.0, 1e-15);
  EXPECT_NEAR(rho.matrix()(0, 4).real(), 0.1, 1e-15);
}

TEST(Horodecki, RejectsOutOfRange) {
  EXPECT_THROW(horodecki_state(-0.1), Error);
  EXPECT_THROW(horodecki_state(1.1), Error);
}

TEST(Horodecki, AGridEndpoints) {
  const auto g = bound_entanglement_a_grid(1000);
  ASSERT_EQ(g.size(), 1000u);
  EXPECT_DOUBLE_EQ(g.front(), 0.001);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
}

TEST(Benchmark, SmallRunEndpointsAndTrends) {
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(k / 10.0);
  const auto rows = benchmark_fp_fn(2, 2, grid, 200, 3);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows.front().false_negatives, 0);
  EXPECT_EQ(rows.back().false_positives, 0);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_LE(rows[k].false_positives, rows[k - 1].false_positives);
    EXPECT_GE(rows[k].false_negatives, rows[k - 1].false_negatives);
  }
  for (const auto& r : rows) {
    EXPECT_LE(r.false_positives, r.sample_size);
    EXPECT_LE(r.false_negatives, r.sample_size);
    EXPECT_EQ(r.seed, 3u);
  }
}

TEST(Benchmark, Deterministic) {
  const std::vector<double> grid{0.3, 0.8};
  const auto a = benchmark_fp_fn(2, 3, grid, 100, 9);
  const auto b = benchmark_fp_fn(2, 3, grid, 100, 9);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(a[k].false_positives, b[k].false_positives);
    EXPECT_EQ(a[k].false_negatives, b[k].false_negatives);
  }
}

TEST(Benchmark, UnsupportedDims) {
  try {
    benchmark_fp_fn(3, 3, {0.5}, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedDims);
  }
}

TEST(BoundEntanglement, HalfNormDetectsAll) {
  const auto rows = bound_entanglement_sweep({0.5}, bound_entanglement_a_grid(1000));
  EXPECT_EQ(rows[0].detected, 1000);
  EXPECT_EQ(rows[0].total, 1000);
}

TEST(BoundEntanglement, CountsNonIncreasingAndDetectedMatchesDistances) {
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(k / 10.0);
  const auto rows = bound_entanglement_sweep(grid, bound_entanglement_a_grid(200));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int positive = static_cast<int>(
        std::count_if(rows[k].distances.begin(), rows[k].distances.end(), [](double d) { return d > 1e-9; }));
    EXPECT_EQ(rows[k].detected, positive);
    if (k > 0) EXPECT_LE(rows[k].detected, rows[k - 1].detected);
  }
}

TEST(BoundEntanglement, DistanceTracksBlochNorm) {
  const auto grid = bound_entanglement_a_grid(1000);
  const auto rows = bound_entanglement_sweep({0.3, 0.5}, grid);
  for (const auto& row : rows) {
    std::vector<double> d, r;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (row.distances[i] <= kDetectionThreshold) continue;
      d.push_back(row.distances[i]);
      r.push_back(normalized_bloch(horodecki_state(grid[i])).norm());
    }
    ASSERT_GT(d.size(), 10u);
    EXPECT_GE(pearson(d, r), 0.95) << "eta " << row.norm;
    // Continuity: neighbouring a values never jump by more than ten local slopes.
    for (std::size_t i = 2; i + 1 < row.distances.size(); ++i) {
      const double jump = std::abs(row.distances[i] - row.distances[i - 1]);
      const double slope = std::max(std::abs(row.distances[i - 1] - row.distances[i - 2]),
                                    std::abs(row.distances[i + 1] - row.distances[i]));
      EXPECT_LE(jump, 10.0 * slope + 1e-9) << "a=" << grid[i];
    }
  }
}

TEST(DistanceComparison, RowsAndUnits) {
  const auto rows = distance_comparison(5, {0.5, 1.0}, 4);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].state_id, static_cast<int>(i / 2));
    EXPECT_GT(rows[i].exact, 0.0);
  }
  // The singlet: Frobenius distance 1/sqrt3 times sqrt(4/3) in normalized units.
  EXPECT_NEAR(project_to_ppt_set(bell_state(4)).distance * frobenius_to_normalized_bloch(4), 2.0 / 3.0, 1e-6);
}

TEST(DistanceComparison, SeparableStateHasZeroDistances) {
  const DensityOperator rho = sample_state(SampleKind::Separable, Dims{2, 2}, 77);
  EXPECT_LT(project_to_ppt_set(rho).distance, 1e-9);
  const Classification c = classify(rho, fit_separable_mvce(2, 2, 1.0));
  EXPECT_EQ(c.label, Label::Separable);
  EXPECT_LT(c.distance, kDetectionThreshold);
}

TEST(Threads, EnvironmentCap) {
  setenv("ENTGEO_THREADS", "3", 1);
  EXPECT_EQ(worker_count(100), 3);
  EXPECT_EQ(worker_count(2), 2);
  unsetenv("ENTGEO_THREADS");
  EXPECT_GE(worker_count(100), 1);
}

TEST(Threads, ParallelMatchesSerial) {
  setenv("ENTGEO_THREADS", "1", 1);
  const auto serial = benchmark_fp_fn(2, 2, {0.4, 0.7, 1.0}, 150, 12);
  setenv("ENTGEO_THREADS", "4", 1);
  const auto parallel = benchmark_fp_fn(2, 2, {0.4, 0.7, 1.0}, 150, 12);
  unsetenv("ENTGEO_THREADS");
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].false_positives, parallel[k].false_positives);
    EXPECT_EQ(serial[k].false_negatives, parallel[k].false_negatives);
  }
}
