#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stab/pauli.hpp"

namespace stab {

/// Stabilizer tableau [U_A|U_B|c] of a Clifford channel from n_in qubits to
/// n_out qubits. Columns: A block first (2*n_in), then B block (2*n_out),
/// then the sign bit. Rows generate the channel's Pauli-superoperator group.
///
/// A state tableau is simply a channel tableau with n_in = 0.
class ChannelTableau {
 public:
  ChannelTableau() : ChannelTableau(0, 0) {}
  ChannelTableau(std::size_t n_in, std::size_t n_out, bool trace_preserving = true);

  static ChannelTableau identity(std::size_t n_qubits);

  std::size_t n_in() const { return n_in_; }
  std::size_t n_out() const { return n_out_; }
  std::size_t n_rows() const { return mat_.n_rows(); }
  bool trace_preserving() const { return tp_; }
  void set_trace_preserving(bool tp) { tp_ = tp; }
  const BitMatrix& matrix() const { return mat_; }

  void append_row(const PhasePoint& a, const PhasePoint& b, bool sign);
  /// Full row of 2*n_in + 2*n_out + 1 bits, sign last.
  void append_row(const BitVector& full_row);

  PhasePoint a_part(std::size_t r) const;
  PhasePoint b_part(std::size_t r) const;
  bool sign(std::size_t r) const;
  /// Sign-free part of a row: 2*(n_in + n_out) bits, A block then B block.
  BitVector point_row(std::size_t r) const;

  void swap_rows(std::size_t a, std::size_t b) { mat_.swap_rows(a, b); }

  /// Row dst <- product row of dst and src with the split-system sign rule.
  /// Throws if dst == src or if the rows anticommute on the joint system.
  void add_row(std::size_t dst, std::size_t src);

  /// Unique canonical representative: RREF over B columns then A columns,
  /// redundant rows dropped. Returns nullopt if the tableau is infeasible
  /// (a row combination gives [0...0|1], i.e. the zero map).
  std::optional<ChannelTableau> canonical() const;

  static ChannelTableau tensor(const ChannelTableau& t1, const ChannelTableau& t2);

  /// Tableau of second . first via the kernel of the stacked B blocks.
  /// Requires first.n_out == second.n_in. Result is canonical.
  static std::optional<ChannelTableau> compose(const ChannelTableau& second,
                                               const ChannelTableau& first);

  /// Compose with Tr on one output qubit and Id on the rest.
  ChannelTableau discarded(std::size_t out_qubit) const;

  /// State tableau of the Choi state (partial transpose sign flip on A).
  /// Requires trace_preserving.
  ChannelTableau choi_state() const;

  /// Pad with identity wires and permute qubits to target positions.
  /// Complement input positions (ascending) carry identity wires to
  /// complement output positions (ascending).
  ChannelTableau embedded(std::span<const std::size_t> in_targets,
                          std::span<const std::size_t> out_targets,
                          std::size_t ambient_in, std::size_t ambient_out) const;
  /// Gate-like convenience: same targets on both sides.
  ChannelTableau embedded(std::span<const std::size_t> targets, std::size_t ambient) const;

  /// Group element selected by a coefficient vector over the rows:
  /// sign-free point (A block then B block) plus accumulated sign.
  /// The result does not depend on the accumulation order.
  std::pair<BitVector, bool> group_element(const BitVector& alpha) const;

  /// In-place fast path for local unitary gates: gate must be in [I|S|c]
  /// form. Applies it to output qubits `targets`; O(n_rows) per call.
  void apply_output_unitary(const ChannelTableau& gate, std::span<const std::size_t> targets);

  /// Checks the three tableau invariants: joint symplecticity, feasibility,
  /// and (when flagged trace-preserving) the column-space condition.
  bool validate(std::string* why = nullptr) const;

  /// Printing format: one row per line "<A bits>|<B bits>|<sign>", with a
  /// header "channel <n_in> -> <n_out>[ non-tp]". Round-trips via from_text.
  std::string to_text() const;
  static ChannelTableau from_text(std::string_view text);
  /// Human form, one row per line: "<PauliA> -> <+/-><PauliB>".
  std::string to_human() const;

  bool operator==(const ChannelTableau&) const = default;

 private:
  std::size_t sign_col() const { return 2 * (n_in_ + n_out_); }
  // ((beta_B - beta_A)/2) mod 2 for two sign-free rows; throws if odd joint.
  bool sign_delta(const BitVector& p, const BitVector& q) const;

  std::size_t n_in_ = 0;
  std::size_t n_out_ = 0;
  bool tp_ = true;
  BitMatrix mat_;
};

}  // namespace stab
