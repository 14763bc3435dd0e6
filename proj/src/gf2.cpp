#include "stab/gf2.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace stab {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }
}  // namespace

void BitVector::check(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("BitVector index out of range");
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitVector::from_string: expected 0/1");
    }
  }
  return v;
}

bool BitVector::get(std::size_t i) const {
  check(i);
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitVector::set(std::size_t i, bool v) {
  check(i);
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (v) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) {
  check(i);
  words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

bool BitVector::is_zero() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.size_ != size_) throw std::invalid_argument("BitVector xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

BitVector BitVector::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > size_) throw std::out_of_range("BitVector::slice");
  BitVector out(end - begin);
  for (std::size_t i = begin; i < end; ++i)
    if (get(i)) out.set(i - begin, true);
  return out;
}

void BitVector::paste(std::size_t begin, const BitVector& src) {
  if (begin + src.size() > size_) throw std::out_of_range("BitVector::paste");
  for (std::size_t i = 0; i < src.size(); ++i) set(begin + i, src.get(i));
}

BitVector BitVector::concat(const BitVector& tail) const {
  BitVector out(size_ + tail.size());
  out.paste(0, *this);
  out.paste(size_, tail);
  return out;
}

std::string BitVector::str() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::size_t dot_count(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot_count: length mismatch");
  std::size_t n = 0;
  auto aw = a.words();
  auto bw = b.words();
  for (std::size_t i = 0; i < aw.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(aw[i] & bw[i]));
  return n;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : n_rows_(rows), n_cols_(cols), wpr_(word_count(cols)), data_(rows * wpr_, 0) {}

void BitMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= n_rows_ || c >= n_cols_) throw std::out_of_range("BitMatrix index out of range");
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return {};
  BitMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    m.set_row(r, BitVector::from_string(rows[r]));
  return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  return (data_[r * wpr_ + c / kWordBits] >> (c % kWordBits)) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  check(r, c);
  const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
  if (v) {
    data_[r * wpr_ + c / kWordBits] |= mask;
  } else {
    data_[r * wpr_ + c / kWordBits] &= ~mask;
  }
}

void BitMatrix::flip(std::size_t r, std::size_t c) {
  check(r, c);
  data_[r * wpr_ + c / kWordBits] ^= std::uint64_t{1} << (c % kWordBits);
}

BitVector BitMatrix::row(std::size_t r) const {
  if (r >= n_rows_) throw std::out_of_range("BitMatrix::row");
  BitVector v(n_cols_);
  auto w = v.words();
  for (std::size_t i = 0; i < wpr_; ++i) w[i] = data_[r * wpr_ + i];
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (r >= n_rows_) throw std::out_of_range("BitMatrix::set_row");
  if (v.size() != n_cols_) throw std::invalid_argument("BitMatrix::set_row: length mismatch");
  auto w = v.words();
  for (std::size_t i = 0; i < wpr_; ++i) data_[r * wpr_ + i] = w[i];
}

void BitMatrix::append_row(const BitVector& v) {
  if (n_rows_ == 0 && n_cols_ == 0 && wpr_ == 0) {
    n_cols_ = v.size();
    wpr_ = word_count(n_cols_);
  }
  if (v.size() != n_cols_) throw std::invalid_argument("BitMatrix::append_row: length mismatch");
  data_.resize(data_.size() + wpr_, 0);
  ++n_rows_;
  set_row(n_rows_ - 1, v);
}

void BitMatrix::remove_row(std::size_t r) {
  if (r >= n_rows_) throw std::out_of_range("BitMatrix::remove_row");
  data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * wpr_),
              data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * wpr_));
  --n_rows_;
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a >= n_rows_ || b >= n_rows_) throw std::out_of_range("BitMatrix::swap_rows");
  if (a == b) return;
  for (std::size_t i = 0; i < wpr_; ++i) std::swap(data_[a * wpr_ + i], data_[b * wpr_ + i]);
}

void BitMatrix::row_xor(std::size_t dst, std::size_t src) {
  if (dst >= n_rows_ || src >= n_rows_) throw std::out_of_range("BitMatrix::row_xor");
  if (dst == src) throw std::invalid_argument("BitMatrix::row_xor: dst == src");
  for (std::size_t i = 0; i < wpr_; ++i) data_[dst * wpr_ + i] ^= data_[src * wpr_ + i];
}

bool BitMatrix::row_is_zero(std::size_t r) const {
  if (r >= n_rows_) throw std::out_of_range("BitMatrix::row_is_zero");
  for (std::size_t i = 0; i < wpr_; ++i)
    if (data_[r * wpr_ + i] != 0) return false;
  return true;
}

bool BitMatrix::row_range_is_zero(std::size_t r, std::size_t col_begin,
                                  std::size_t col_end) const {
  if (r >= n_rows_ || col_begin > col_end || col_end > n_cols_)
    throw std::out_of_range("BitMatrix::row_range_is_zero");
  for (std::size_t c = col_begin; c < col_end; ++c)
    if (get(r, c)) return false;
  return true;
}

BitVector BitMatrix::mul_left(const BitVector& alpha) const {
  if (alpha.size() != n_rows_) throw std::invalid_argument("BitMatrix::mul_left: length mismatch");
  BitVector out(n_cols_);
  for (std::size_t r = 0; r < n_rows_; ++r) {
    if (!alpha.get(r)) continue;
    auto ow = out.words();
    for (std::size_t i = 0; i < wpr_; ++i) ow[i] ^= data_[r * wpr_ + i];
  }
  return out;
}

BitMatrix BitMatrix::mul(const BitMatrix& rhs) const {
  if (n_cols_ != rhs.n_rows_) throw std::invalid_argument("BitMatrix::mul: shape mismatch");
  BitMatrix out(n_rows_, rhs.n_cols_);
  for (std::size_t r = 0; r < n_rows_; ++r) {
    BitVector acc(rhs.n_cols_);
    for (std::size_t c = 0; c < n_cols_; ++c)
      if (get(r, c)) acc ^= rhs.row(c);
    out.set_row(r, acc);
  }
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix out(n_cols_, n_rows_);
  for (std::size_t r = 0; r < n_rows_; ++r)
    for (std::size_t c = 0; c < n_cols_; ++c)
      if (get(r, c)) out.set(c, r, true);
  return out;
}

BitMatrix BitMatrix::without_columns(const std::vector<std::size_t>& cols) const {
  std::vector<bool> drop(n_cols_, false);
  for (auto c : cols) {
    if (c >= n_cols_) throw std::out_of_range("BitMatrix::without_columns");
    drop[c] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < n_cols_; ++c)
    if (!drop[c]) keep.push_back(c);
  BitMatrix out(n_rows_, keep.size());
  for (std::size_t r = 0; r < n_rows_; ++r)
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (get(r, keep[i])) out.set(r, i, true);
  return out;
}

std::span<const std::uint64_t> BitMatrix::row_words(std::size_t r) const {
  return {data_.data() + r * wpr_, wpr_};
}

std::span<std::uint64_t> BitMatrix::row_words(std::size_t r) {
  return {data_.data() + r * wpr_, wpr_};
}

RrefResult rref(const BitMatrix& m, std::span<const std::size_t> cols) {
  RrefResult out;
  out.m = m;
  std::size_t row = 0;
  for (auto c : cols) {
    if (c >= m.n_cols()) throw std::out_of_range("rref: column out of range");
    std::size_t p = row;
    while (p < out.m.n_rows() && !out.m.get(p, c)) ++p;
    if (p == out.m.n_rows()) continue;
    out.m.swap_rows(row, p);
    for (std::size_t q = 0; q < out.m.n_rows(); ++q)
      if (q != row && out.m.get(q, c)) out.m.row_xor(q, row);
    out.pivots.emplace_back(row, c);
    ++row;
  }
  out.rank = out.pivots.size();
  return out;
}

RrefResult rref(const BitMatrix& m) {
  std::vector<std::size_t> cols(m.n_cols());
  std::iota(cols.begin(), cols.end(), 0);
  return rref(m, cols);
}

BitMatrix left_kernel(const BitMatrix& m) {
  const std::size_t k = m.n_rows();
  BitMatrix aug(k, m.n_cols() + k);
  for (std::size_t r = 0; r < k; ++r) {
    aug.set_row(r, m.row(r).concat(BitVector(k)));
    aug.set(r, m.n_cols() + r, true);
  }
  std::vector<std::size_t> cols(m.n_cols());
  std::iota(cols.begin(), cols.end(), 0);
  auto red = rref(aug, cols);
  BitMatrix kernel(0, k);
  for (std::size_t r = red.rank; r < k; ++r)
    kernel.append_row(red.m.row(r).slice(m.n_cols(), m.n_cols() + k));
  // RREF the basis itself so the result is canonical.
  auto canon = rref(kernel);
  BitMatrix out(0, k);
  for (std::size_t r = 0; r < canon.rank; ++r) out.append_row(canon.m.row(r));
  return out;
}

std::optional<BitVector> solve_membership(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.n_cols()) throw std::invalid_argument("solve_membership: length mismatch");
  const std::size_t k = m.n_rows();
  BitMatrix aug(k, m.n_cols() + k);
  for (std::size_t r = 0; r < k; ++r) {
    aug.set_row(r, m.row(r).concat(BitVector(k)));
    aug.set(r, m.n_cols() + r, true);
  }
  std::vector<std::size_t> cols(m.n_cols());
  std::iota(cols.begin(), cols.end(), 0);
  auto red = rref(aug, cols);
  BitVector res = v;
  BitVector alpha(k);
  for (auto [row, col] : red.pivots) {
    if (res.get(col)) {
      res ^= red.m.row(row).slice(0, m.n_cols());
      alpha ^= red.m.row(row).slice(m.n_cols(), m.n_cols() + k);
    }
  }
  if (!res.is_zero()) return std::nullopt;
  return alpha;
}

}  // namespace stab
