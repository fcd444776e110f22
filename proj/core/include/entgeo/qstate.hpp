#pragma once

#include <cstdint>
#include <vector>

#include "entgeo/rng.hpp"
#include "entgeo/types.hpp"

namespace entgeo {

inline constexpr double kStateTolerance = 1e-10;

/// A density operator: Hermitian, positive semidefinite, unit trace, with
/// declared subsystem dimensions whose product equals the matrix side.
///
/// Construction validates all three properties to within 1e-10 and throws
/// `Error{InvalidState}` otherwise. Instances are immutable.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, Dims dims);

  // Single-system state; dims = {rows}.
  explicit DensityOperator(ComplexMatrix matrix);

  // |psi><psi| for a normalized ket.
  static DensityOperator from_ket(const ComplexVector& ket, Dims dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  bool is_bipartite() const noexcept { return dims_.size() == 2; }

  // Ascending eigenvalues.
  RealVector eigenvalues() const;
  double purity() const;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

/// Generalized Gell-Mann basis with Tr(s_i s_j) = alpha * delta_ij, alpha = 2.
///
/// Element order: the d(d-1)/2 symmetric matrices |j><k| + |k><j| for j < k in
/// lexicographic order, then the d(d-1)/2 antisymmetric -i|j><k| + i|k><j| in
/// the same order, then the d-1 diagonal matrices
/// sqrt(2/(l(l+1))) (sum_{j<l} |j><j| - l |l><l|), l = 1..d-1.
/// For d = 2 this is (sigma_x, sigma_y, sigma_z).
struct HermitianBasis {
  int dim = 0;
  std::vector<ComplexMatrix> elements;
  double alpha = 2.0;
};

HermitianBasis hermitian_basis(int d);

/// Coefficients r_i = (d / alpha) Tr(s_i rho) of a Hermitian operator in the
/// Gell-Mann basis, so that rho = (1/d)(I + sum_i r_i s_i).
struct BlochVector {
  RealVector coords;
  int dim = 0;
};

BlochVector to_bloch(const DensityOperator& rho);
// Any Hermitian matrix; the identity component is dropped.
BlochVector to_bloch(const ComplexMatrix& hermitian);

// Hermitian, unit trace. Not necessarily positive: wrap in DensityOperator to check.
ComplexMatrix from_bloch(const BlochVector& r);

// Bloch norm shared by every pure state of dimension d: sqrt(d(d-1)/2).
double pure_state_radius(int d);

/// Entries >= 0 summing to 1 within 1e-12.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(RealVector probs);
  ProbabilityVector(std::initializer_list<double> probs);

  static ProbabilityVector uniform(int n);
  static bool is_valid(const RealVector& probs, double tol = 1e-12);

  const RealVector& probs() const noexcept { return probs_; }
  int size() const noexcept { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_(i); }

 private:
  RealVector probs_;
};

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Reduced state on subsystem `keep` (0 = A, 1 = B) of a bipartite state.
DensityOperator partial_trace(const DensityOperator& rho, int keep);

// Transpose of subsystem `part` (0 = A, 1 = B). Works on any matrix with
// bipartite dims, which the PPT projection relies on.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const Dims& dims, int part);
ComplexMatrix partial_transpose(const DensityOperator& rho, int part);

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

PptResult is_ppt(const DensityOperator& rho, double tol = kStateTolerance);

// True when every partial sum of the decreasing spectrum of Tr_B rho
// (zero-padded) dominates the matching partial sum for rho. False certifies
// entanglement.
bool majorization_check(const DensityOperator& rho);

// Entropies are in bits with 0 log 0 = 0. Eigenvalues in [-1e-10, 0) are
// clipped to zero; anything more negative throws InvalidState.
double von_neumann_entropy(const DensityOperator& rho);
double entropy_of_spectrum(const RealVector& eigenvalues);

// +infinity when supp(rho) is not contained in supp(sigma).
double quantum_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// Bell basis, k = 1..4:
///   psi1 = (|00> + |11>)/sqrt2, psi2 = (|00> - |11>)/sqrt2,
///   psi3 = (|01> + |10>)/sqrt2, psi4 = (|01> - |10>)/sqrt2 (singlet).
ComplexVector bell_ket(int k);
DensityOperator bell_state(int k);

/// CHSH combination <A1 (B1 + B2) + A2 (B1 - B2)> for a two-qubit state.
/// Alice measures sigma along angles 0 and 2 theta in the x-z plane, Bob along
/// theta and -theta with antiparallel observables, so the singlet reaches
/// +2 sqrt2 at theta = pi/4.
double chsh_value(const DensityOperator& rho, double theta);

enum class SampleKind { Separable, EntangledFiltered, PureHaar, MixedHs };

const char* to_string(SampleKind kind);
SampleKind sample_kind_from_string(const std::string& name);

// Number of product pure states mixed by the separable sampler is uniform on
// {1, ..., kMaxSeparableTerms}.
inline constexpr int kMaxSeparableTerms = 4;

/// Random states.
///  - PureHaar: normalized complex Gaussian ket.
///  - MixedHs: G G^dagger / Tr with iid complex Gaussian G (Hilbert-Schmidt).
///  - Separable: uniform mixture of k Haar product pure states, k ~ U{1..4}.
///  - EntangledFiltered: MixedHs rejected until not PPT; bipartite, total
///    dimension <= 9. Only 2x2 and 2x3 labels are exact.
DensityOperator sample_state(SampleKind kind, const Dims& dims, CounterRng& rng);
DensityOperator sample_state(SampleKind kind, const Dims& dims, std::uint64_t seed,
                             std::uint64_t trial = 0);

ComplexVector random_ket(int d, CounterRng& rng);

// Helpers shared across modules.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_defect(const ComplexMatrix& m);
ComplexMatrix hermitian_part(const ComplexMatrix& m);
RealVector hermitian_eigenvalues(const ComplexMatrix& m);
int product(const Dims& dims);

}  // namespace entgeo
