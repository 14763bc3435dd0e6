#pragma once

#include "stab/tableau.hpp"

namespace stab {

enum class ElementOp {
  PrepChaotic,
  Prep0,
  Prep1,
  PrepPlus,
  PrepMinus,
  Discard,
  Identity,
  DephaseZ,
  DephaseX,
  GateZ,
  GateX,
  GateY,
  GateH,
  GateS,
  GateCNOT,
  GateCZ,
  PauliUnitary,
  CliffordUnitary,
  MeasureObservable,
  // Non-destructive variant used by the circuit language: the measured
  // qubits pass through, the record is appended as the last output qubit.
  MeasureKeep,
  Postselect,
};

struct ElementKind {
  ElementOp op = ElementOp::Identity;
  PhasePoint u;    // PauliUnitary / Measure* / Postselect
  bool c = false;  // sign parameter of the above
  BitMatrix s;     // CliffordUnitary symplectic matrix
  BitVector phase; // CliffordUnitary sign vector

  static ElementKind simple(ElementOp op) { return {op}; }
  static ElementKind pauli_unitary(PhasePoint u) {
    return {ElementOp::PauliUnitary, std::move(u)};
  }
  static ElementKind clifford_unitary(BitMatrix s, BitVector phase);
  static ElementKind measure(PhasePoint u, bool c) {
    return {ElementOp::MeasureObservable, std::move(u), c};
  }
  static ElementKind measure_keep(PhasePoint u, bool c) {
    return {ElementOp::MeasureKeep, std::move(u), c};
  }
  static ElementKind postselect(PhasePoint u, bool c) {
    return {ElementOp::Postselect, std::move(u), c};
  }

  std::size_t arity_in() const;
  std::size_t arity_out() const;
};

ChannelTableau element_tableau(const ElementKind& kind);

/// [I|I|J u^T]: conjugation by the Pauli unitary P(u).
ChannelTableau pauli_unitary_tableau(const PhasePoint& u);

/// [I|S|c] for a symplectic S (S J S^T = J) and sign vector c.
ChannelTableau clifford_unitary_tableau(const BitMatrix& s, const BitVector& c);

/// Destructive measurement of P(u|c): one row [u|1 0|c], one classical
/// output bit (a dephased qubit).
ChannelTableau measurement_tableau(const PhasePoint& u, bool c);

/// Measure P(u|c) and keep the system; record qubit appended last.
ChannelTableau measure_keep_tableau(const PhasePoint& u, bool c);

/// Post-selection on outcome P(u|c) = +1: [u|.|c], not trace-preserving.
ChannelTableau postselect_tableau(const PhasePoint& u, bool c);

/// Projection rho -> P rho P with P = (I + P(u|c))/2, keeping the system.
/// Not trace-preserving.
ChannelTableau project_observable_tableau(const PhasePoint& u, bool c);

/// Basis of {v : [v,u] = 0}, one point per row of the returned matrix.
BitMatrix centralizer_basis(const PhasePoint& u);

}  // namespace stab
