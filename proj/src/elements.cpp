#include "stab/elements.hpp"

#include <stdexcept>

namespace stab {

namespace {

ChannelTableau prep(const char* b_bits, bool sign) {
  ChannelTableau t(0, 1);
  BitVector row(3);
  row.paste(0, BitVector::from_string(b_bits));
  row.set(2, sign);
  t.append_row(row);
  return t;
}

ChannelTableau from_rows(std::size_t n_in, std::size_t n_out,
                         const std::vector<std::string>& rows) {
  ChannelTableau t(n_in, n_out);
  for (const auto& r : rows) t.append_row(BitVector::from_string(r));
  return t;
}

bool is_symplectic(const BitMatrix& s) {
  if (s.n_rows() != s.n_cols() || s.n_rows() % 2 != 0) return false;
  const BitMatrix j = symplectic_gram(s.n_rows() / 2);
  return s.mul(j).mul(s.transposed()) == j;
}

}  // namespace

ElementKind ElementKind::clifford_unitary(BitMatrix s, BitVector phase) {
  ElementKind k{ElementOp::CliffordUnitary};
  k.s = std::move(s);
  k.phase = std::move(phase);
  return k;
}

std::size_t ElementKind::arity_in() const {
  switch (op) {
    case ElementOp::PrepChaotic:
    case ElementOp::Prep0:
    case ElementOp::Prep1:
    case ElementOp::PrepPlus:
    case ElementOp::PrepMinus:
      return 0;
    case ElementOp::Discard:
    case ElementOp::Identity:
    case ElementOp::DephaseZ:
    case ElementOp::DephaseX:
    case ElementOp::GateZ:
    case ElementOp::GateX:
    case ElementOp::GateY:
    case ElementOp::GateH:
    case ElementOp::GateS:
      return op == ElementOp::Discard ? 1 : 1;
    case ElementOp::GateCNOT:
    case ElementOp::GateCZ:
      return 2;
    case ElementOp::PauliUnitary:
    case ElementOp::MeasureObservable:
    case ElementOp::MeasureKeep:
    case ElementOp::Postselect:
      return u.n_qubits();
    case ElementOp::CliffordUnitary:
      return s.n_rows() / 2;
  }
  throw std::logic_error("unreachable");
}

std::size_t ElementKind::arity_out() const {
  switch (op) {
    case ElementOp::Discard:
    case ElementOp::Postselect:
      return arity_in() - (op == ElementOp::Discard ? 1 : u.n_qubits());
    case ElementOp::MeasureObservable:
      return 1;
    case ElementOp::MeasureKeep:
      return u.n_qubits() + 1;
    default:
      return arity_in() + (arity_in() == 0 ? 1 : 0) - (op == ElementOp::Discard ? 1 : 0);
  }
}

ChannelTableau pauli_unitary_tableau(const PhasePoint& u) {
  const std::size_t n = u.n_qubits();
  ChannelTableau t(n, n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    BitVector row(4 * n + 1);
    row.set(i, true);
    row.set(2 * n + i, true);
    // (J u^T)_i swaps z and x within the qubit block.
    row.set(4 * n, u.bits().get(i ^ 1));
    t.append_row(row);
  }
  return t;
}

ChannelTableau clifford_unitary_tableau(const BitMatrix& s, const BitVector& c) {
  if (!is_symplectic(s))
    throw std::invalid_argument("clifford_unitary_tableau: S is not symplectic");
  if (c.size() != s.n_rows())
    throw std::invalid_argument("clifford_unitary_tableau: sign vector length mismatch");
  const std::size_t n = s.n_rows() / 2;
  ChannelTableau t(n, n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    BitVector row(4 * n + 1);
    row.set(i, true);
    row.paste(2 * n, s.row(i));
    row.set(4 * n, c.get(i));
    t.append_row(row);
  }
  return t;
}

ChannelTableau measurement_tableau(const PhasePoint& u, bool c) {
  ChannelTableau t(u.n_qubits(), 1);
  BitVector row(2 * u.n_qubits() + 3);
  row.paste(0, u.bits());
  row.set(2 * u.n_qubits(), true);  // Z on the record qubit
  row.set(2 * u.n_qubits() + 2, c);
  t.append_row(row);
  return t;
}

BitMatrix centralizer_basis(const PhasePoint& u) {
  const std::size_t n2 = 2 * u.n_qubits();
  // v is in the centralizer iff v . (J u^T) = 0.
  BitMatrix ju(n2, 1);
  for (std::size_t i = 0; i < n2; ++i) ju.set(i, 0, u.bits().get(i ^ 1));
  return left_kernel(ju);
}

ChannelTableau measure_keep_tableau(const PhasePoint& u, bool c) {
  const std::size_t n = u.n_qubits();
  ChannelTableau t(n, n + 1);
  const BitMatrix cent = centralizer_basis(u);
  for (std::size_t r = 0; r < cent.n_rows(); ++r) {
    BitVector row(2 * n + 2 * (n + 1) + 1);
    row.paste(0, cent.row(r));
    row.paste(2 * n, cent.row(r));
    t.append_row(row);
  }
  // Record correlation: Z on the record tracks the measured observable.
  BitVector rec(2 * n + 2 * (n + 1) + 1);
  rec.paste(2 * n, u.bits());
  rec.set(2 * n + 2 * n, true);
  rec.set(rec.size() - 1, c);
  t.append_row(rec);
  return t;
}

ChannelTableau postselect_tableau(const PhasePoint& u, bool c) {
  ChannelTableau t(u.n_qubits(), 0, /*trace_preserving=*/false);
  BitVector row(2 * u.n_qubits() + 1);
  row.paste(0, u.bits());
  row.set(2 * u.n_qubits(), c);
  t.append_row(row);
  return t;
}

ChannelTableau project_observable_tableau(const PhasePoint& u, bool c) {
  const std::size_t n = u.n_qubits();
  ChannelTableau t(n, n, /*trace_preserving=*/false);
  const BitMatrix cent = centralizer_basis(u);
  for (std::size_t r = 0; r < cent.n_rows(); ++r) {
    BitVector row(4 * n + 1);
    row.paste(0, cent.row(r));
    row.paste(2 * n, cent.row(r));
    t.append_row(row);
  }
  BitVector stabilized(4 * n + 1);
  stabilized.paste(2 * n, u.bits());
  stabilized.set(4 * n, c);
  t.append_row(stabilized);
  return t;
}

ChannelTableau element_tableau(const ElementKind& kind) {
  switch (kind.op) {
    case ElementOp::PrepChaotic:
      return {0, 1};
    case ElementOp::Prep0:
      return prep("10", false);
    case ElementOp::Prep1:
      return prep("10", true);
    case ElementOp::PrepPlus:
      return prep("01", false);
    case ElementOp::PrepMinus:
      return prep("01", true);
    case ElementOp::Discard:
      return {1, 0};
    case ElementOp::Identity:
      return ChannelTableau::identity(1);
    case ElementOp::DephaseZ:
      return from_rows(1, 1, {"10100"});
    case ElementOp::DephaseX:
      return from_rows(1, 1, {"01010"});
    case ElementOp::GateZ:
      return from_rows(1, 1, {"10100", "01011"});
    case ElementOp::GateX:
      return from_rows(1, 1, {"10101", "01010"});
    case ElementOp::GateY:
      return pauli_unitary_tableau(pauli_from_string("Y").point);
    case ElementOp::GateH:
      return from_rows(1, 1, {"10010", "01100"});
    case ElementOp::GateS:
      return from_rows(1, 1, {"10100", "01110"});
    case ElementOp::GateCNOT:
      return from_rows(2, 2, {"100010000", "010001010", "001010100", "000100010"});
    case ElementOp::GateCZ:
      // Table row set for CZ; the last row is X2 -> Z1 X2.
      return from_rows(2, 2, {"100010000", "010001100", "001000100", "000110010"});
    case ElementOp::PauliUnitary:
      return pauli_unitary_tableau(kind.u);
    case ElementOp::CliffordUnitary:
      return clifford_unitary_tableau(kind.s, kind.phase);
    case ElementOp::MeasureObservable:
      return measurement_tableau(kind.u, kind.c);
    case ElementOp::MeasureKeep:
      return measure_keep_tableau(kind.u, kind.c);
    case ElementOp::Postselect:
      return postselect_tableau(kind.u, kind.c);
  }
  throw std::logic_error("unreachable");
}

}  // namespace stab
