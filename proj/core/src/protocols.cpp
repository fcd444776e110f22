#include <cmath>

#include "entgeo/infochannel.hpp"

namespace entgeo {

namespace {

constexpr double kPurityTol = 1e-10;

bool is_pure(const DensityOperator& rho) { return std::abs(rho.purity() - 1.0) <= kPurityTol; }

}  // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

SuperdenseReport superdense_verify() {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix encoders[4] = {pauli_y(), pauli_x(), pauli_z(), id2};
  const ComplexVector shared = bell_ket(4);

  SuperdenseReport report;
  report.probabilities = RealMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const ComplexVector sent = kron(encoders[i], id2) * shared;
    int best = 0;
    for (int j = 0; j < 4; ++j) {
      report.probabilities(j, i) = std::norm(bell_ket(j + 1).dot(sent));
      if (report.probabilities(j, i) > report.probabilities(best, i)) best = j;
    }
    if (best == i && std::abs(report.probabilities(i, i) - 1.0) <= 1e-10) ++report.decoded;
  }
  report.bits = std::log2(static_cast<double>(std::max(report.decoded, 1)));
  return report;
}

TeleportReport teleport_verify(const DensityOperator& phi) {
  if (phi.dim() != 2) throw Error(ErrorCode::InvalidDimension, "teleportation input must be a qubit");
  if (!is_pure(phi)) throw Error(ErrorCode::InvalidState, "teleportation input must be pure");

  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix corrections[4] = {id2, pauli_z(), pauli_x(), pauli_y()};
  const ComplexVector pair = bell_ket(1);
  // Qubit order: input, Alice, Bob.
  const ComplexMatrix joint = kron(phi.matrix(), pair * pair.adjoint());

  TeleportReport report;
  for (int k = 0; k < 4; ++k) {
    const ComplexVector b = bell_ket(k + 1);
    const ComplexMatrix projector = kron(b * b.adjoint(), id2);
    const ComplexMatrix post = projector * joint * projector;
    const double prob = post.trace().real();
    report.probabilities[static_cast<std::size_t>(k)] = prob;
    const DensityOperator after(hermitian_part(post / prob), Dims{4, 2});
    const ComplexMatrix bob = partial_trace(after, 1).matrix();
    const ComplexMatrix out = corrections[k] * bob * corrections[k].adjoint();
    report.fidelities[static_cast<std::size_t>(k)] = (phi.matrix() * out).trace().real();
  }
  return report;
}

double distillation_rate(const DensityOperator& phi) {
  if (!phi.is_bipartite()) throw Error(ErrorCode::InvalidDimension, "distillation rate needs a bipartite state");
  if (!is_pure(phi)) throw Error(ErrorCode::InvalidState, "distillation rate needs a pure state");
  const double sa = von_neumann_entropy(partial_trace(phi, 0));
  const double sb = von_neumann_entropy(partial_trace(phi, 1));
  if (std::abs(sa - sb) > 1e-10) throw Error(ErrorCode::InvalidState, "marginal entropies of a pure state disagree");
  return sa;
}

}  // namespace entgeo
