#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "stab/circuit.hpp"
#include "stab/tableau.hpp"

/// Exponential-cost dense ground truth (<= 8 qubits), used by tests and
/// the `verify` command. Dense conventions: qubit 0 is the most
/// significant tensor factor; Pauli-transfer-matrix (PTM) indices are
/// phase-space points read as little-endian integers, so the one-qubit
/// operator order is I, Z, X, Y.
namespace stab::oracle {

using DenseOperator = Eigen::MatrixXcd;
using DensePTM = Eigen::MatrixXd;

inline constexpr std::size_t kMaxDenseQubits = 8;

std::size_t ptm_index(const PhasePoint& u);
PhasePoint ptm_point(std::size_t index, std::size_t n_qubits);

/// Dense matrix of P(u|c) = (-1)^c i^{-<z,x>} Z^{z1}X^{x1} x ... ; exact
/// entries in {0, +-1, +-i}.
DenseOperator dense_pauli(const PauliObservable& p);

/// PTM(v,u) = 2^{-n_out} Tr[P(v) Phi[P(u)]], assembled by enumerating the
/// tableau's group elements: 2^{n_in - n_out} sum of (-1)^c over elements
/// with A part u and B part v.
DensePTM ptm_of_tableau(const ChannelTableau& t);

/// Kraus operators (2^{n_out} x 2^{n_in} each) of an elementary channel,
/// from textbook dense definitions, independent of the tableau path.
std::vector<DenseOperator> kraus_of_element(const ElementKind& k);

/// PTM of a channel given by Kraus operators.
DensePTM ptm_of_kraus(const std::vector<DenseOperator>& kraus, std::size_t n_in,
                      std::size_t n_out);

/// PTM of an elementary channel via its dense Kraus form.
DensePTM ptm_of_dense(const ElementKind& k);

/// Pads Kraus operators with identity wires: the operators act on the
/// in/out target slots; complement input slots (ascending) are wired
/// identically to complement output slots (ascending).
std::vector<DenseOperator> expand_kraus(const std::vector<DenseOperator>& kraus,
                                        std::span<const std::size_t> in_targets,
                                        std::span<const std::size_t> out_targets,
                                        std::size_t ambient_in, std::size_t ambient_out);

/// Dense Choi state of a trace-preserving tableau: 2^{-n} sum of the Choi
/// stabilizer group, n = n_in + n_out.
DenseOperator choi_of_tableau(const ChannelTableau& t);

/// One full-width layer of a circuit: an elementary channel embedded over
/// the live wires, or (when `permutation` is non-empty) a pure wire
/// relabeling with out_slot = permutation[in_slot].
struct CircuitStep {
  ElementKind kind;
  std::vector<std::size_t> in_targets;
  std::vector<std::size_t> out_targets;
  std::size_t ambient_in = 0;
  std::size_t ambient_out = 0;
  std::vector<std::size_t> permutation;
};

/// Decomposes a circuit into full-width steps whose left-to-right
/// composition equals the contracted diagram, including the final
/// relabeling into boundary order (records in statement order, then live
/// qubits ascending).
std::vector<CircuitStep> circuit_steps(const Circuit& c);

/// Tableau of one step (embedded element or wire permutation).
ChannelTableau tableau_of_step(const CircuitStep& s);

/// Dense PTM of one step via Kraus operators.
DensePTM ptm_of_step_dense(const CircuitStep& s);

/// Dense PTM of the whole circuit: product of the step PTMs.
DensePTM ptm_of_circuit_dense(const Circuit& c);

/// For a fully measured circuit (scalar input, n record outputs):
/// normalized outcome distribution. Entry index packs record j into bit
/// (n-1-j), matching the dense slot order.
Eigen::VectorXd dense_output_probs(const Circuit& c);

}  // namespace stab::oracle
