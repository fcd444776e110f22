#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entgeo/convexgeo.hpp"
#include "entgeo/qstate.hpp"

namespace entgeo {

// A state counts as detected when its distance to the ellipsoid exceeds this.
inline constexpr double kDetectionThreshold = 1e-9;

/// Bloch coordinates divided by the pure-state radius sqrt(N(N-1)/2), so that
/// pure states of any dimension N sit on the unit sphere. All ellipsoids in
/// this module live in these coordinates.
RealVector normalized_bloch(const DensityOperator& rho);
RealVector normalized_bloch(const ComplexMatrix& hermitian);

// Multiplies a Frobenius distance between N x N operators into normalized
// Bloch units: (N / sqrt2) / sqrt(N(N-1)/2).
double frobenius_to_normalized_bloch(int n);

/// Kets of a complete set of mutually unbiased bases, d(d+1) in total.
/// d = 2: eigenstates of sigma_z, sigma_x, sigma_y (the six signed Bloch axes).
/// Odd prime d: the computational basis followed by
/// v_{b,m}(k) = w^(b k^2 + m k) / sqrt(d), w = exp(2 pi i / d), for b, m = 0..d-1.
/// Other d throw Error{UnsupportedDims}.
std::vector<ComplexVector> local_axis_states(int d);

/// Product generators of the separable model at norm eta.
///
/// Each local factor is eta |v><v| + (1 - eta) I/d for |v> in
/// local_axis_states(d), i.e. a pure axis state pulled towards the centre to
/// normalized Bloch length eta. Every pair of factors is tensored and mapped
/// to normalized composite Bloch coordinates; duplicates are dropped.
/// 2x2 gives 36 vectors, 2x3 gives 72, 3x3 gives 144.
struct SeparableEnsemble {
  std::vector<RealVector> vectors;
  double norm = 1.0;
  Dims dims;

  // One vector per column.
  RealMatrix as_matrix() const;
};

SeparableEnsemble separable_axis_ensemble(int d_a, int d_b, double eta);

/// A fitted covering ellipsoid together with how it was built.
struct SeparableModel {
  Ellipsoid ellipsoid;
  Dims dims;
  double eta = 1.0;
  double eps = kDefaultMvceEps;
  int ensemble_size = 0;
};

SeparableModel fit_separable_mvce(int d_a, int d_b, double eta, double eps = kDefaultMvceEps);

enum class Label { Separable, Entangled };
const char* to_string(Label label);

struct Classification {
  Label label = Label::Separable;
  // Euclidean distance to the ellipsoid in normalized Bloch units; 0 inside.
  double distance = 0.0;
  double membership = 0.0;
};

// Entangled when the normalized Bloch vector lies farther than
// kDetectionThreshold outside the ellipsoid, so boundary points round to separable.
Classification classify(const DensityOperator& rho, const SeparableModel& model);
Classification classify(const DensityOperator& rho, const Ellipsoid& e);

/// The 3x3 family with parameter a in [0, 1], normalized by 1/(8a + 1).
/// In the basis |00>, |01>, ..., |22>: a on the diagonal except at |20> and
/// |22>, which hold (1 + a)/2; a between every pair of |00>, |11>, |22>; and
/// sqrt(1 - a^2)/2 between |20> and |22>.
DensityOperator horodecki_state(double a);

// n points from 0.001 to 1 inclusive, evenly spaced.
std::vector<double> bound_entanglement_a_grid(int n);

struct BenchmarkRow {
  double norm = 0.0;
  int false_positives = 0;
  int false_negatives = 0;
  int sample_size = 0;
  std::uint64_t seed = 0;
};

/// For every eta: fit the separable model, then count separable samples that
/// are detected (false positives) and entangled-filtered samples that are not
/// (false negatives), with the same threshold as classify(). Only 2x2 and
/// 2x3, where PPT labels are exact.
///
/// Test states are keyed by (seed, class, trial) and shared by all eta cells,
/// so the counts are monotone whenever the ellipsoids are nested.
std::vector<BenchmarkRow> benchmark_fp_fn(int d_a, int d_b, const std::vector<double>& eta_grid, int n_per_class,
                                          std::uint64_t seed, double eps = kDefaultMvceEps);

struct BoundEntRow {
  double norm = 0.0;
  int detected = 0;
  int total = 0;
  std::vector<double> a_values;
  std::vector<double> distances;
};

// Classifies horodecki_state(a) for every a against the 3x3 model at every eta.
std::vector<BoundEntRow> bound_entanglement_sweep(const std::vector<double>& eta_grid,
                                                  const std::vector<double>& a_grid,
                                                  double eps = kDefaultMvceEps);

struct DistanceRow {
  int state_id = 0;
  // Distance to the PPT set, converted to normalized Bloch units.
  double exact = 0.0;
  double eta = 0.0;
  double mvce_distance = 0.0;
};

/// n entangled-filtered 2x2 states keyed by (seed, trial); one row per
/// (state, eta) in state-major order.
std::vector<DistanceRow> distance_comparison(int n, const std::vector<double>& eta_list, std::uint64_t seed,
                                             double eps = kDefaultMvceEps);

// Worker threads for grid cells: ENTGEO_THREADS if set and positive, else
// hardware concurrency, never more than `tasks`.
int worker_count(std::size_t tasks);

}  // namespace entgeo
