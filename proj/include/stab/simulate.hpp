#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stab/circuit.hpp"
#include "stab/diagram.hpp"

namespace stab {

/// Exact dyadic probability a / 2^b, kept reduced (a odd or a = 0).
struct DyadicProb {
  std::uint64_t a = 0;
  std::uint32_t b = 0;

  static DyadicProb zero() { return {0, 0}; }
  static DyadicProb one() { return {1, 0}; }
  static DyadicProb make(std::uint64_t a, std::uint32_t b);

  double value() const;
  DyadicProb operator*(const DyadicProb& o) const;
  bool operator==(const DyadicProb&) const = default;
  std::string to_string() const;
};

/// Fully dephased output tableau [.|M|c] restricted to the Z columns.
struct ClassicalTableau {
  BitMatrix m;  // r x n over the Z columns of the n output bits
  BitVector c;  // r signs
  std::size_t n_bits = 0;

  std::size_t rank() const { return m.n_rows(); }
};

/// Contracts the circuit and extracts the classical outcome tableau.
/// Requires every boundary output to be a measurement record (fully
/// dephased). Returns nullopt when the contraction is infeasible
/// (contradictory post-selection).
std::optional<ClassicalTableau> final_classical_tableau(
    const Circuit& circ,
    const ContractionStrategy& strategy = ContractionStrategy::sequential());

/// p(x) = 2^{r-n} when M x = c, else 0.
DyadicProb strong_prob(const ClassicalTableau& ct, const BitVector& x);

struct Deterministic {
  bool bit = false;
};
struct UniformRandom {};
using OutcomeKind = std::variant<Deterministic, UniformRandom>;

/// Classifies measuring P(u|c) on the state tableau t (n_in == 0):
/// deterministic when u lies in the row span, uniformly random otherwise.
OutcomeKind measure_outcome_kind(const ChannelTableau& t, const PhasePoint& u, bool c);

/// Draws `shots` outcome strings, one bit per non-postselected record in
/// statement order. Deterministic in (circ, shots, seed). Returns nullopt
/// when a post-selection forces a zero-probability branch.
std::optional<std::vector<BitVector>> weak_sample(const Circuit& circ,
                                                  std::size_t shots,
                                                  std::uint64_t seed);

}  // namespace stab
