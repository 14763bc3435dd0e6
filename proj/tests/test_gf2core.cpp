#include <doctest.h>

#include "stab/gf2.hpp"

using namespace stab;

TEST_CASE("bit vector basics") {
  BitVector v(130);
  CHECK(v.size() == 130);
  CHECK(v.is_zero());
  v.set(0, true);
  v.set(129, true);
  CHECK(v.get(0));
  CHECK(v.get(129));
  CHECK_FALSE(v.get(64));
  CHECK(v.popcount() == 2);
  v.flip(129);
  CHECK(v.popcount() == 1);
  CHECK_THROWS(v.get(130));
}

TEST_CASE("bit vector slice / paste / concat") {
  BitVector v = BitVector::from_string("1011001");
  CHECK(v.str() == "1011001");
  CHECK(v.slice(1, 4).str() == "011");
  BitVector w(3);
  w.set(0, true);
  v.paste(4, w);
  CHECK(v.str() == "1011100");
  CHECK(v.concat(w).str() == "1011100100");
}

TEST_CASE("xor and dot count") {
  BitVector a = BitVector::from_string("1101");
  BitVector b = BitVector::from_string("1011");
  CHECK((a ^ b).str() == "0110");
  CHECK(dot_count(a, b) == 2);
}

TEST_CASE("matrix rref ranks and pivots") {
  BitMatrix m = BitMatrix::from_rows({"110", "011", "101"});  // rank 2
  auto r = rref(m);
  CHECK(r.rank == 2);
  CHECK(r.pivots.size() == 2);
  // Pivot rows come first and are in echelon form over visited columns.
  CHECK(r.m.get(0, 0));
  CHECK(r.m.row_is_zero(2));

  BitMatrix id = BitMatrix::identity(5);
  CHECK(rref(id).rank == 5);
}

TEST_CASE("rref respects a custom column order") {
  BitMatrix m = BitMatrix::from_rows({"011", "010"});
  const std::vector<std::size_t> cols{2, 1, 0};
  auto r = rref(m, cols);
  CHECK(r.rank == 2);
  CHECK(r.pivots[0].second == 2);
  CHECK(r.pivots[1].second == 1);
}

TEST_CASE("left kernel annihilates and has full dimension") {
  BitMatrix m = BitMatrix::from_rows({"110", "011", "101", "000"});
  BitMatrix k = left_kernel(m);
  CHECK(k.n_rows() == 2);  // 4 rows - rank 2
  for (std::size_t r = 0; r < k.n_rows(); ++r)
    CHECK(m.mul_left(k.row(r)).is_zero());
}

TEST_CASE("solve_membership finds combinations or fails") {
  BitMatrix m = BitMatrix::from_rows({"110", "011"});
  auto a = solve_membership(m, BitVector::from_string("101"));
  REQUIRE(a.has_value());
  CHECK(m.mul_left(*a) == BitVector::from_string("101"));
  CHECK_FALSE(solve_membership(m, BitVector::from_string("100")).has_value());
  // Zero vector is always a member via the zero combination.
  auto z = solve_membership(m, BitVector(3));
  REQUIRE(z.has_value());
  CHECK(m.mul_left(*z).is_zero());
}

TEST_CASE("matrix products and transpose") {
  BitMatrix a = BitMatrix::from_rows({"11", "01"});
  BitMatrix b = BitMatrix::from_rows({"10", "11"});
  BitMatrix ab = a.mul(b);
  CHECK(ab == BitMatrix::from_rows({"01", "11"}));
  CHECK(a.transposed() == BitMatrix::from_rows({"10", "11"}));
}

TEST_CASE("without_columns removes the named columns") {
  BitMatrix m = BitMatrix::from_rows({"10110"});
  CHECK(m.without_columns({1, 3}) == BitMatrix::from_rows({"110"}));
}
