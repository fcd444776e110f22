#pragma once

#include <array>
#include <functional>
#include <vector>

#include "entgeo/qstate.hpp"
#include "entgeo/types.hpp"

namespace entgeo {

// Classical quantities are in bits. Divergences with a support violation
// return +infinity rather than throwing.

double shannon_entropy(const ProbabilityVector& p);
double relative_entropy(const ProbabilityVector& p, const ProbabilityVector& q);

/// Column-stochastic channel matrix: entry (y, x) is P(Y = y | X = x), so the
/// output distribution is T p. Columns must sum to 1 within 1e-12.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(RealMatrix columns);

  const RealMatrix& matrix() const noexcept { return t_; }
  int inputs() const noexcept { return static_cast<int>(t_.cols()); }
  int outputs() const noexcept { return static_cast<int>(t_.rows()); }
  double operator()(int y, int x) const { return t_(y, x); }

  ProbabilityVector output(const ProbabilityVector& p) const;
  ProbabilityVector column(int x) const;

  static TransitionMatrix identity(int n);
  static TransitionMatrix binary_symmetric(double flip);
  // Outputs 0, 1, erasure.
  static TransitionMatrix binary_erasure(double erasure);

 private:
  RealMatrix t_;
};

double mutual_information(const ProbabilityVector& p, const TransitionMatrix& t);

struct CapacityResult {
  double capacity = 0.0;
  ProbabilityVector input = ProbabilityVector::uniform(1);
  // D(T(.|x) || T p*) for each input symbol at the returned p*.
  RealVector divergences;
  // Upper bound max_x divergences(x) minus the lower bound I(p*).
  double gap = 0.0;
  long iterations = 0;
};

inline constexpr double kDefaultCapacityTol = 1e-10;
inline constexpr long kDefaultCapacityMaxIter = 100'000;

/// Blahut-Arimoto iteration from the uniform input. Stops when
/// max_x D(T(.|x) || T p) - I(p) < tol, which bounds the distance to capacity.
CapacityResult dmc_capacity(const TransitionMatrix& t, double tol = kDefaultCapacityTol,
                            long max_iter = kDefaultCapacityMaxIter);

/// rho -> sum_i A_i rho A_i^dagger with sum_i A_i^dagger A_i = I within 1e-10.
class KrausChannel {
 public:
  KrausChannel(std::vector<ComplexMatrix> operators, Dims dims_in, Dims dims_out);
  // Single-system input and output.
  explicit KrausChannel(std::vector<ComplexMatrix> operators);

  const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
  const Dims& dims_in() const noexcept { return dims_in_; }
  const Dims& dims_out() const noexcept { return dims_out_; }
  int dim_in() const { return product(dims_in_); }
  int dim_out() const { return product(dims_out_); }

  ComplexMatrix apply(const ComplexMatrix& m) const;

  static KrausChannel identity(int d);

 private:
  std::vector<ComplexMatrix> ops_;
  Dims dims_in_;
  Dims dims_out_;
};

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho);

// Any linear map on d_in x d_in matrices, e.g. the transpose.
using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// (map (x) id)(|W><W|) with |W> = sum_i |ii> / sqrt(d_in).
ComplexMatrix choi_matrix(const LinearMap& map, int d_in);
ComplexMatrix choi_matrix(const KrausChannel& ch);

struct ChoiCheck {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

ChoiCheck choi_cp_check(const KrausChannel& ch, double tol = kStateTolerance);
ChoiCheck choi_cp_check(const LinearMap& map, int d_in, double tol = kStateTolerance);

class QuantumEnsemble {
 public:
  QuantumEnsemble(ProbabilityVector weights, std::vector<DensityOperator> states);

  const ProbabilityVector& weights() const noexcept { return weights_; }
  const std::vector<DensityOperator>& states() const noexcept { return states_; }
  DensityOperator average() const;

 private:
  ProbabilityVector weights_;
  std::vector<DensityOperator> states_;
};

// S(sum p_i rho_i) - sum p_i S(rho_i).
double holevo_chi(const QuantumEnsemble& ens);

struct ErasureCapacities {
  double classical = 0.0;
  double entanglement_assisted = 0.0;
};

// (1 - eps, 2 (1 - eps)).
ErasureCapacities erasure_capacities(double eps);

/// Qubit-to-qutrit erasure channel with Kraus operators
/// sqrt(1 - eps) (|0><0| + |1><1|), sqrt(eps) |2><0|, sqrt(eps) |2><1|.
/// Level 2 is the erasure flag.
KrausChannel erasure_channel(double eps);

// Entry (y, x) = <y| ch(|x><x|) |y> over computational basis states.
TransitionMatrix induced_transition_matrix(const KrausChannel& ch);

struct SuperdenseReport {
  // probabilities(j, i): outcome psi_{j+1} when message i+1 was encoded.
  RealMatrix probabilities;
  int decoded = 0;
  double bits = 0.0;
};

/// Encodes message i by applying U_i (x) I to the singlet with
/// U = (sigma_y, sigma_x, sigma_z, I), then measures in the Bell basis.
SuperdenseReport superdense_verify();

struct TeleportReport {
  std::array<double, 4> probabilities{};
  std::array<double, 4> fidelities{};
};

/// Teleports a pure qubit through the shared pair psi1. Outcome k of the Bell
/// measurement on (input, Alice) is corrected at Bob by I, sigma_z, sigma_x,
/// sigma_y for k = 1..4. Fidelity is Tr(phi out).
TeleportReport teleport_verify(const DensityOperator& phi);

// S(Tr_B phi) for a pure bipartite phi.
double distillation_rate(const DensityOperator& phi);

// Pauli matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace entgeo
