#include "stab/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace stab {

ChannelTableau::ChannelTableau(std::size_t n_in, std::size_t n_out, bool trace_preserving)
    : n_in_(n_in), n_out_(n_out), tp_(trace_preserving), mat_(0, 2 * (n_in + n_out) + 1) {}

ChannelTableau ChannelTableau::identity(std::size_t n_qubits) {
  ChannelTableau t(n_qubits, n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    for (std::size_t o = 0; o < 2; ++o) {
      BitVector row(t.sign_col() + 1);
      row.set(2 * q + o, true);
      row.set(2 * n_qubits + 2 * q + o, true);
      t.append_row(row);
    }
  }
  return t;
}

void ChannelTableau::append_row(const PhasePoint& a, const PhasePoint& b, bool sign) {
  if (a.n_qubits() != n_in_ || b.n_qubits() != n_out_)
    throw std::invalid_argument("ChannelTableau::append_row: system mismatch");
  BitVector row(sign_col() + 1);
  row.paste(0, a.bits());
  row.paste(2 * n_in_, b.bits());
  row.set(sign_col(), sign);
  mat_.append_row(row);
}

void ChannelTableau::append_row(const BitVector& full_row) {
  if (full_row.size() != sign_col() + 1)
    throw std::invalid_argument("ChannelTableau::append_row: row length mismatch");
  mat_.append_row(full_row);
}

PhasePoint ChannelTableau::a_part(std::size_t r) const {
  return PhasePoint::from_bits(mat_.row(r).slice(0, 2 * n_in_));
}

PhasePoint ChannelTableau::b_part(std::size_t r) const {
  return PhasePoint::from_bits(mat_.row(r).slice(2 * n_in_, 2 * (n_in_ + n_out_)));
}

bool ChannelTableau::sign(std::size_t r) const { return mat_.get(r, sign_col()); }

BitVector ChannelTableau::point_row(std::size_t r) const {
  return mat_.row(r).slice(0, sign_col());
}

bool ChannelTableau::sign_delta(const BitVector& p, const BitVector& q) const {
  const std::size_t split = 2 * n_in_;
  const Phase4 ba = beta(PhasePoint::from_bits(p.slice(0, split)),
                         PhasePoint::from_bits(q.slice(0, split)));
  const Phase4 bb = beta(PhasePoint::from_bits(p.slice(split, p.size())),
                         PhasePoint::from_bits(q.slice(split, q.size())));
  const Phase4 diff = bb - ba;
  if (!diff.even())
    throw std::logic_error("ChannelTableau: rows anticommute on the joint system");
  return diff.value() == 2;
}

void ChannelTableau::add_row(std::size_t dst, std::size_t src) {
  if (dst == src) throw std::invalid_argument("ChannelTableau::add_row: dst == src");
  const bool flip = sign_delta(point_row(src), point_row(dst));
  mat_.row_xor(dst, src);
  if (flip) mat_.flip(dst, sign_col());
}

std::optional<ChannelTableau> ChannelTableau::canonical() const {
  ChannelTableau t = *this;
  // B columns first, then A columns; the sign column is never pivoted.
  std::vector<std::size_t> order;
  order.reserve(sign_col());
  for (std::size_t c = 2 * n_in_; c < sign_col(); ++c) order.push_back(c);
  for (std::size_t c = 0; c < 2 * n_in_; ++c) order.push_back(c);

  std::size_t row = 0;
  for (auto c : order) {
    std::size_t p = row;
    while (p < t.n_rows() && !t.mat_.get(p, c)) ++p;
    if (p == t.n_rows()) continue;
    t.mat_.swap_rows(row, p);
    for (std::size_t q = 0; q < t.n_rows(); ++q)
      if (q != row && t.mat_.get(q, c)) t.add_row(q, row);
    ++row;
  }
  for (std::size_t r = row; r < t.n_rows(); ++r)
    if (t.sign(r)) return std::nullopt;  // generates [0...0|1]
  while (t.n_rows() > row) t.mat_.remove_row(t.n_rows() - 1);
  return t;
}

ChannelTableau ChannelTableau::tensor(const ChannelTableau& t1, const ChannelTableau& t2) {
  ChannelTableau out(t1.n_in_ + t2.n_in_, t1.n_out_ + t2.n_out_,
                     t1.tp_ && t2.tp_);
  const std::size_t a1 = 2 * t1.n_in_, a2 = 2 * t2.n_in_;
  const std::size_t b1 = 2 * t1.n_out_, b2 = 2 * t2.n_out_;
  for (std::size_t r = 0; r < t1.n_rows(); ++r) {
    BitVector row(out.sign_col() + 1);
    row.paste(0, t1.mat_.row(r).slice(0, a1));
    row.paste(a1 + a2, t1.mat_.row(r).slice(a1, a1 + b1));
    row.set(out.sign_col(), t1.sign(r));
    out.append_row(row);
  }
  for (std::size_t r = 0; r < t2.n_rows(); ++r) {
    BitVector row(out.sign_col() + 1);
    row.paste(a1, t2.mat_.row(r).slice(0, a2));
    row.paste(a1 + a2 + b1, t2.mat_.row(r).slice(a2, a2 + b2));
    row.set(out.sign_col(), t2.sign(r));
    out.append_row(row);
  }
  return out;
}

std::pair<BitVector, bool> ChannelTableau::group_element(const BitVector& alpha) const {
  if (alpha.size() != n_rows())
    throw std::invalid_argument("ChannelTableau::group_element: coefficient length mismatch");
  BitVector point(sign_col());
  bool s = false;
  for (std::size_t r = 0; r < n_rows(); ++r) {
    if (!alpha.get(r)) continue;
    const BitVector p = point_row(r);
    s = s != sign(r) != sign_delta(p, point);
    point ^= p;
  }
  return {point, s};
}

std::optional<ChannelTableau> ChannelTableau::compose(const ChannelTableau& second,
                                                      const ChannelTableau& first) {
  if (first.n_out_ != second.n_in_)
    throw std::invalid_argument("ChannelTableau::compose: intermediate system mismatch");
  const std::size_t k1 = first.n_rows();
  const std::size_t k2 = second.n_rows();
  const std::size_t nb = 2 * first.n_out_;

  // Rows of first's B block stacked above rows of second's A block; a kernel
  // vector (alpha | alpha') selects matching group elements on B.
  BitMatrix stacked(k1 + k2, nb);
  for (std::size_t r = 0; r < k1; ++r)
    stacked.set_row(r, first.mat_.row(r).slice(2 * first.n_in_, 2 * first.n_in_ + nb));
  for (std::size_t r = 0; r < k2; ++r)
    stacked.set_row(k1 + r, second.mat_.row(r).slice(0, nb));
  const BitMatrix kernel = left_kernel(stacked);

  ChannelTableau out(first.n_in_, second.n_out_, first.tp_ && second.tp_);
  for (std::size_t r = 0; r < kernel.n_rows(); ++r) {
    const BitVector gamma = kernel.row(r);
    auto [p1, s1] = first.group_element(gamma.slice(0, k1));
    auto [p2, s2] = second.group_element(gamma.slice(k1, k1 + k2));
    assert(p1.slice(2 * first.n_in_, p1.size()) == p2.slice(0, nb));
    BitVector row(out.sign_col() + 1);
    row.paste(0, p1.slice(0, 2 * first.n_in_));
    row.paste(2 * first.n_in_, p2.slice(nb, p2.size()));
    row.set(out.sign_col(), s1 != s2);
    out.append_row(row);
  }
  return out.canonical();
}

ChannelTableau ChannelTableau::discarded(std::size_t out_qubit) const {
  if (out_qubit >= n_out_) throw std::out_of_range("ChannelTableau::discarded");
  const std::size_t cz = 2 * n_in_ + 2 * out_qubit;
  ChannelTableau t = *this;
  // Gaussian elimination over the discarded qubit's two columns, then drop
  // the (at most two) rows still supported there.
  std::size_t row = 0;
  for (std::size_t c : {cz, cz + 1}) {
    std::size_t p = row;
    while (p < t.n_rows() && !t.mat_.get(p, c)) ++p;
    if (p == t.n_rows()) continue;
    t.mat_.swap_rows(row, p);
    for (std::size_t q = 0; q < t.n_rows(); ++q)
      if (q != row && t.mat_.get(q, c)) t.add_row(q, row);
    ++row;
  }
  while (row > 0) {
    t.mat_.remove_row(0);
    --row;
  }
  ChannelTableau out(n_in_, n_out_ - 1, tp_);
  out.mat_ = t.mat_.without_columns({cz, cz + 1});
  return out;
}

ChannelTableau ChannelTableau::choi_state() const {
  if (!tp_)
    throw std::logic_error("ChannelTableau::choi_state: requires a trace-preserving tableau");
  ChannelTableau out(0, n_in_ + n_out_);
  for (std::size_t r = 0; r < n_rows(); ++r) {
    BitVector row(out.sign_col() + 1);
    row.paste(0, point_row(r));
    const bool flip = (inner_zx(a_part(r)).value() & 1) != 0;
    row.set(out.sign_col(), sign(r) != flip);
    out.append_row(row);
  }
  return out;
}

namespace {
std::vector<std::size_t> complement_positions(std::span<const std::size_t> targets,
                                              std::size_t ambient) {
  std::vector<bool> used(ambient, false);
  for (auto t : targets) {
    if (t >= ambient) throw std::out_of_range("embed: target out of range");
    if (used[t]) throw std::invalid_argument("embed: overlapping targets");
    used[t] = true;
  }
  std::vector<std::size_t> compl_pos;
  for (std::size_t i = 0; i < ambient; ++i)
    if (!used[i]) compl_pos.push_back(i);
  return compl_pos;
}
}  // namespace

ChannelTableau ChannelTableau::embedded(std::span<const std::size_t> in_targets,
                                        std::span<const std::size_t> out_targets,
                                        std::size_t ambient_in, std::size_t ambient_out) const {
  if (in_targets.size() != n_in_ || out_targets.size() != n_out_)
    throw std::invalid_argument("embed: target count must match the tableau arity");
  const auto in_compl = complement_positions(in_targets, ambient_in);
  const auto out_compl = complement_positions(out_targets, ambient_out);
  if (in_compl.size() != out_compl.size())
    throw std::invalid_argument("embed: identity wire counts differ");

  const ChannelTableau big = tensor(*this, identity(in_compl.size()));

  std::vector<std::size_t> in_map(ambient_in), out_map(ambient_out);
  for (std::size_t j = 0; j < n_in_; ++j) in_map[j] = in_targets[j];
  for (std::size_t j = 0; j < in_compl.size(); ++j) in_map[n_in_ + j] = in_compl[j];
  for (std::size_t j = 0; j < n_out_; ++j) out_map[j] = out_targets[j];
  for (std::size_t j = 0; j < out_compl.size(); ++j) out_map[n_out_ + j] = out_compl[j];

  ChannelTableau out(ambient_in, ambient_out, tp_);
  for (std::size_t r = 0; r < big.n_rows(); ++r) {
    BitVector row(out.sign_col() + 1);
    for (std::size_t q = 0; q < ambient_in; ++q)
      for (std::size_t o = 0; o < 2; ++o)
        if (big.mat_.get(r, 2 * q + o)) row.set(2 * in_map[q] + o, true);
    for (std::size_t q = 0; q < ambient_out; ++q)
      for (std::size_t o = 0; o < 2; ++o)
        if (big.mat_.get(r, 2 * ambient_in + 2 * q + o))
          row.set(2 * ambient_in + 2 * out_map[q] + o, true);
    row.set(out.sign_col(), big.sign(r));
    out.append_row(row);
  }
  return out;
}

ChannelTableau ChannelTableau::embedded(std::span<const std::size_t> targets,
                                        std::size_t ambient) const {
  if (n_in_ != n_out_)
    throw std::invalid_argument("embed: one-sided overload needs n_in == n_out");
  return embedded(targets, targets, ambient, ambient);
}

void ChannelTableau::apply_output_unitary(const ChannelTableau& gate,
                                          std::span<const std::size_t> targets) {
  const std::size_t t = gate.n_in();
  if (gate.n_out() != t || targets.size() != t)
    throw std::invalid_argument("apply_output_unitary: gate arity mismatch");
  if (gate.n_rows() != 2 * t)
    throw std::invalid_argument("apply_output_unitary: gate must be in [I|S|c] form");
  for (std::size_t r = 0; r < 2 * t; ++r)
    for (std::size_t c = 0; c < 2 * t; ++c)
      if (gate.matrix().get(r, c) != (r == c))
        throw std::invalid_argument("apply_output_unitary: gate must be in [I|S|c] form");
  for (auto q : targets)
    if (q >= n_out_) throw std::out_of_range("apply_output_unitary: target out of range");

  // Local transition table: point v -> (v * S, accumulated sign).
  const std::size_t npts = std::size_t{1} << (2 * t);
  std::vector<std::uint32_t> new_point(npts);
  std::vector<std::uint8_t> sgn(npts);
  for (std::size_t v = 0; v < npts; ++v) {
    BitVector alpha(2 * t);
    for (std::size_t j = 0; j < 2 * t; ++j)
      if ((v >> j) & 1) alpha.set(j, true);
    auto [point, s] = gate.group_element(alpha);
    std::uint32_t nv = 0;
    for (std::size_t j = 0; j < 2 * t; ++j)
      if (point.get(2 * t + j)) nv |= 1u << j;
    new_point[v] = nv;
    sgn[v] = s ? 1 : 0;
  }

  // Per-bit word/mask addresses of the touched columns plus the sign bit.
  struct BitAddr {
    std::size_t word;
    std::uint64_t mask;
  };
  std::vector<BitAddr> cols(2 * t);
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t o = 0; o < 2; ++o) {
      const std::size_t c = 2 * n_in_ + 2 * targets[j] + o;
      cols[2 * j + o] = {c / 64, std::uint64_t{1} << (c % 64)};
    }
  const std::size_t sc = sign_col();
  const BitAddr sign_addr{sc / 64, std::uint64_t{1} << (sc % 64)};

  for (std::size_t r = 0; r < n_rows(); ++r) {
    auto words = mat_.row_words(r);
    std::uint32_t v = 0;
    for (std::size_t j = 0; j < 2 * t; ++j)
      if (words[cols[j].word] & cols[j].mask) v |= 1u << j;
    const std::uint32_t diff = v ^ new_point[v];
    if (diff) {
      for (std::size_t j = 0; j < 2 * t; ++j)
        if ((diff >> j) & 1) words[cols[j].word] ^= cols[j].mask;
    }
    if (sgn[v]) words[sign_addr.word] ^= sign_addr.mask;
  }
}

bool ChannelTableau::validate(std::string* why) const {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  // Joint symplecticity of the sign-free part.
  for (std::size_t r = 0; r < n_rows(); ++r) {
    const auto pr = PhasePoint::from_bits(point_row(r));
    for (std::size_t q = r + 1; q < n_rows(); ++q)
      if (symplectic_form(pr, PhasePoint::from_bits(point_row(q))))
        return fail("rows anticommute on the joint system");
  }
  // Feasibility: no combination of rows gives [0...0|1].
  BitMatrix points(n_rows(), sign_col());
  for (std::size_t r = 0; r < n_rows(); ++r) points.set_row(r, point_row(r));
  const BitMatrix kernel = left_kernel(points);
  for (std::size_t r = 0; r < kernel.n_rows(); ++r)
    if (group_element(kernel.row(r)).second) return fail("infeasible: generates [0|0|1]");
  // Trace preservation: columns of U_A lie in the column space of U_B,
  // i.e. rank(U_B) == rank([U_A U_B]).
  if (tp_) {
    BitMatrix bblock(n_rows(), 2 * n_out_);
    for (std::size_t r = 0; r < n_rows(); ++r)
      bblock.set_row(r, mat_.row(r).slice(2 * n_in_, sign_col()));
    if (rref(bblock).rank != rref(points).rank)
      return fail("trace-preserving flag set but U_A exceeds the column space of U_B");
  }
  return true;
}

std::string ChannelTableau::to_text() const {
  std::ostringstream os;
  os << "channel " << n_in_ << " -> " << n_out_;
  if (!tp_) os << " non-tp";
  os << '\n';
  for (std::size_t r = 0; r < n_rows(); ++r) {
    const BitVector row = mat_.row(r);
    os << row.slice(0, 2 * n_in_).str() << '|'
       << row.slice(2 * n_in_, sign_col()).str() << '|' << (sign(r) ? '1' : '0') << '\n';
  }
  return os.str();
}

ChannelTableau ChannelTableau::from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string word;
  std::size_t nin = 0, nout = 0;
  std::string arrow;
  if (!(is >> word >> nin >> arrow >> nout) || word != "channel" || arrow != "->")
    throw std::invalid_argument("ChannelTableau::from_text: bad header");
  std::string rest;
  std::getline(is, rest);
  ChannelTableau out(nin, nout, rest.find("non-tp") == std::string::npos);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::string bits;
    for (char ch : line) {
      if (ch == '0' || ch == '1') {
        bits.push_back(ch);
      } else if (ch != '|') {
        throw std::invalid_argument("ChannelTableau::from_text: bad row character");
      }
    }
    out.append_row(BitVector::from_string(bits));
  }
  return out;
}

std::string ChannelTableau::to_human() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < n_rows(); ++r) {
    const std::string a = to_string(PauliObservable{a_part(r), false});
    const std::string b = to_string(PauliObservable{b_part(r), sign(r)});
    os << (n_in_ ? a.substr(1) : std::string(".")) << " -> "
       << (n_out_ ? b : std::string(1, b[0]) + ".") << '\n';
  }
  return os.str();
}

}  // namespace stab
