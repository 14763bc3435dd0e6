#include "stab/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace stab {

namespace {
// Even (z) positions of an interleaved word.
constexpr std::uint64_t kEvenMask = 0x5555555555555555ull;

// Count of qubits where z-bit of a and x-bit of b are both set.
std::size_t cross_zx_count(const BitVector& a, const BitVector& b) {
  std::size_t n = 0;
  auto aw = a.words();
  auto bw = b.words();
  for (std::size_t i = 0; i < aw.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(aw[i] & (bw[i] >> 1) & kEvenMask));
  return n;
}

std::size_t zx_count(const BitVector& u) { return cross_zx_count(u, u); }

void require_same_system(const PhasePoint& u, const PhasePoint& v) {
  if (u.n_qubits() != v.n_qubits())
    throw std::invalid_argument("phase points on different systems");
}
}  // namespace

PhasePoint PhasePoint::from_bits(BitVector bits) {
  if (bits.size() % 2 != 0)
    throw std::invalid_argument("PhasePoint: bit string must have even length");
  PhasePoint p;
  p.bits_ = std::move(bits);
  return p;
}

Phase4 inner4(const BitVector& z, const BitVector& x) {
  return Phase4(static_cast<int>(dot_count(z, x) % 4));
}

Phase4 inner_zx(const PhasePoint& u) {
  return Phase4(static_cast<int>(zx_count(u.bits()) % 4));
}

Phase4 beta(const PhasePoint& u, const PhasePoint& v) {
  require_same_system(u, v);
  const BitVector sum = u.bits() ^ v.bits();
  const int t = static_cast<int>(zx_count(sum) % 4) - static_cast<int>(zx_count(u.bits()) % 4) -
                static_cast<int>(zx_count(v.bits()) % 4) -
                2 * static_cast<int>(cross_zx_count(v.bits(), u.bits()) % 4);
  return Phase4(t);
}

bool symplectic_form(const PhasePoint& u, const PhasePoint& v) {
  require_same_system(u, v);
  return ((cross_zx_count(u.bits(), v.bits()) + cross_zx_count(v.bits(), u.bits())) & 1) != 0;
}

std::pair<PauliObservable, Phase4> mul(const PauliObservable& p, const PauliObservable& q) {
  const Phase4 phase = beta(p.point, q.point);
  PauliObservable out{p.point ^ q.point, p.sign != q.sign};
  return {out, phase};
}

PauliObservable commuting_mul(const PauliObservable& p, const PauliObservable& q) {
  auto [obs, phase] = mul(p, q);
  if (!phase.even())
    throw std::invalid_argument("commuting_mul: observables anticommute");
  if (phase.value() == 2) obs.sign = !obs.sign;
  return obs;
}

PauliObservable transposed(const PauliObservable& p) {
  PauliObservable out = p;
  if (inner_zx(p.point).value() & 1) out.sign = !out.sign;
  return out;
}

BitMatrix symplectic_gram(std::size_t n_qubits) {
  BitMatrix j(2 * n_qubits, 2 * n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    j.set(2 * q, 2 * q + 1, true);
    j.set(2 * q + 1, 2 * q, true);
  }
  return j;
}

std::string to_string(const PauliObservable& p) {
  std::string s;
  s.reserve(p.point.n_qubits() + 1);
  s.push_back(p.sign ? '-' : '+');
  for (std::size_t q = 0; q < p.point.n_qubits(); ++q) {
    const bool z = p.point.z(q);
    const bool x = p.point.x(q);
    s.push_back(z ? (x ? 'Y' : 'Z') : (x ? 'X' : '_'));
  }
  return s;
}

PauliObservable pauli_from_string(std::string_view s) {
  bool sign = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    sign = s.front() == '-';
    s.remove_prefix(1);
  }
  PauliObservable p{PhasePoint(s.size()), sign};
  for (std::size_t q = 0; q < s.size(); ++q) {
    switch (s[q]) {
      case '_':
        break;
      case 'Z':
        p.point.set_z(q, true);
        break;
      case 'X':
        p.point.set_x(q, true);
        break;
      case 'Y':
        p.point.set_z(q, true);
        p.point.set_x(q, true);
        break;
      default:
        throw std::invalid_argument("pauli_from_string: expected _/X/Y/Z");
    }
  }
  return p;
}

}  // namespace stab
