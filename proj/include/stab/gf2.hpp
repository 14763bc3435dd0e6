#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stab {

/// Fixed-length bit string. Indexing is 0-based and bounds-checked.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

  static BitVector from_string(std::string_view bits);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);
  void flip(std::size_t i);

  bool is_zero() const;
  std::size_t popcount() const;

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }
  bool operator==(const BitVector&) const = default;

  /// Bits [begin, end) as a new vector.
  BitVector slice(std::size_t begin, std::size_t end) const;
  /// Overwrite bits [begin, begin + src.size()) with src.
  void paste(std::size_t begin, const BitVector& src);
  BitVector concat(const BitVector& tail) const;

  std::string str() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

 private:
  void check(std::size_t i) const;

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Number of positions where both vectors are 1 (integer count, not mod 2).
std::size_t dot_count(const BitVector& a, const BitVector& b);

/// Bit-packed Boolean matrix; rows stored contiguously in 64-bit words.
/// A matrix with zero rows (or zero columns) is legal.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);
  void flip(std::size_t r, std::size_t c);

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  void append_row(const BitVector& v);
  void remove_row(std::size_t r);
  void swap_rows(std::size_t a, std::size_t b);

  /// Row dst <- dst xor src. Requires dst != src.
  void row_xor(std::size_t dst, std::size_t src);

  bool row_is_zero(std::size_t r) const;
  /// True if row r is zero on columns [col_begin, col_end).
  bool row_range_is_zero(std::size_t r, std::size_t col_begin,
                         std::size_t col_end) const;

  /// alpha * M, alpha indexed over rows.
  BitVector mul_left(const BitVector& alpha) const;
  BitMatrix mul(const BitMatrix& rhs) const;
  BitMatrix transposed() const;
  BitMatrix without_columns(const std::vector<std::size_t>& cols) const;

  bool operator==(const BitMatrix&) const = default;

  std::span<const std::uint64_t> row_words(std::size_t r) const;
  std::span<std::uint64_t> row_words(std::size_t r);
  std::size_t words_per_row() const { return wpr_; }

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> data_;
};

struct RrefResult {
  BitMatrix m;
  // (row, col) per pivot, rows ascending in the order columns were visited.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t rank = 0;
};

/// Row-reduced echelon form restricted to the given column window (visited in
/// the given order). Pivot rows come first, non-pivot rows after.
RrefResult rref(const BitMatrix& m, std::span<const std::size_t> cols);
RrefResult rref(const BitMatrix& m);

/// Basis of {alpha : alpha * m = 0}, one row per basis vector, in RREF.
BitMatrix left_kernel(const BitMatrix& m);

/// alpha with alpha * m = v, if v lies in the row space of m.
std::optional<BitVector> solve_membership(const BitMatrix& m,
                                          const BitVector& v);

}  // namespace stab
