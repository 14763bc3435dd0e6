#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "stab/gf2.hpp"

namespace stab {

/// Integer mod 4, the i-power phase arising in Pauli products.
class Phase4 {
 public:
  constexpr Phase4() = default;
  constexpr explicit Phase4(int v) : v_(static_cast<std::uint8_t>(((v % 4) + 4) % 4)) {}

  constexpr int value() const { return v_; }
  constexpr bool even() const { return (v_ & 1) == 0; }

  constexpr Phase4 operator+(Phase4 o) const { return Phase4(v_ + o.v_); }
  constexpr Phase4 operator-(Phase4 o) const { return Phase4(v_ - o.v_ + 4); }
  constexpr bool operator==(const Phase4&) const = default;

 private:
  std::uint8_t v_ = 0;
};

/// Point of the phase space Z_2^{2n}, bits interleaved as (z1,x1,...,zn,xn).
class PhasePoint {
 public:
  PhasePoint() = default;
  explicit PhasePoint(std::size_t n_qubits) : bits_(2 * n_qubits) {}

  static PhasePoint from_bits(BitVector bits);

  std::size_t n_qubits() const { return bits_.size() / 2; }
  const BitVector& bits() const { return bits_; }

  bool z(std::size_t q) const { return bits_.get(2 * q); }
  bool x(std::size_t q) const { return bits_.get(2 * q + 1); }
  void set_z(std::size_t q, bool v) { bits_.set(2 * q, v); }
  void set_x(std::size_t q, bool v) { bits_.set(2 * q + 1, v); }

  bool is_zero() const { return bits_.is_zero(); }

  PhasePoint& operator^=(const PhasePoint& o) {
    bits_ ^= o.bits_;
    return *this;
  }
  friend PhasePoint operator^(PhasePoint a, const PhasePoint& b) {
    a ^= b;
    return a;
  }
  bool operator==(const PhasePoint&) const = default;

 private:
  BitVector bits_;
};

/// Signed Pauli observable P(u|c) = (-1)^c P(u).
struct PauliObservable {
  PhasePoint point;
  bool sign = false;

  bool operator==(const PauliObservable&) const = default;
};

/// Sum of z_i * x_i mod 4.
Phase4 inner4(const BitVector& z, const BitVector& x);

/// <z,x> of a single interleaved point, mod 4.
Phase4 inner_zx(const PhasePoint& u);

/// The product 2-cocycle: P(u)P(v) = i^{beta(u,v)} P(u xor v).
Phase4 beta(const PhasePoint& u, const PhasePoint& v);

/// [u,v] = beta(u,v) mod 2; zero iff P(u), P(v) commute.
bool symplectic_form(const PhasePoint& u, const PhasePoint& v);

/// Full product: observable part plus the raw i-power phase.
std::pair<PauliObservable, Phase4> mul(const PauliObservable& p, const PauliObservable& q);

/// Product of commuting observables with the phase folded into the sign.
/// Throws std::invalid_argument on anticommuting inputs.
PauliObservable commuting_mul(const PauliObservable& p, const PauliObservable& q);

PauliObservable transposed(const PauliObservable& p);

/// Gram matrix J of the symplectic form ([[0,1],[1,0]] per qubit block).
BitMatrix symplectic_gram(std::size_t n_qubits);

/// Textual form: optional +/- then one of {_,X,Y,Z} per qubit.
std::string to_string(const PauliObservable& p);
PauliObservable pauli_from_string(std::string_view s);

}  // namespace stab
