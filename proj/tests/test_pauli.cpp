#include <doctest.h>

#include "stab/oracle.hpp"
#include "stab/pauli.hpp"

using namespace stab;

namespace {

PhasePoint point(std::size_t n, std::size_t bits) {
  BitVector v(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) v.set(i, (bits >> i) & 1);
  return PhasePoint::from_bits(std::move(v));
}

}  // namespace

TEST_CASE("string round trip and Y phase convention") {
  auto p = pauli_from_string("-XY_Z");
  CHECK(p.sign);
  CHECK(p.point.x(0));
  CHECK_FALSE(p.point.z(0));
  CHECK(p.point.x(1));
  CHECK(p.point.z(1));
  CHECK(to_string(p) == "-XY_Z");
  CHECK(to_string(pauli_from_string("+Z")) == "+Z");
}

TEST_CASE("symplectic form detects commutation") {
  auto X = pauli_from_string("X").point;
  auto Z = pauli_from_string("Z").point;
  auto Y = pauli_from_string("Y").point;
  CHECK(symplectic_form(X, Z));
  CHECK(symplectic_form(X, Y));
  CHECK_FALSE(symplectic_form(X, X));
  auto XX = pauli_from_string("XX").point;
  auto ZZ = pauli_from_string("ZZ").point;
  CHECK_FALSE(symplectic_form(XX, ZZ));
}

TEST_CASE("beta reduces to the symplectic form mod 2") {
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t a = 0; a < (std::size_t{1} << (2 * n)); ++a)
      for (std::size_t b = 0; b < (std::size_t{1} << (2 * n)); ++b) {
        auto u = point(n, a), v = point(n, b);
        CHECK((beta(u, v).value() % 2 == 1) == symplectic_form(u, v));
        // Antisymmetry: beta(u,v) + beta(v,u) = 0 mod 4.
        CHECK((beta(u, v) + beta(v, u)) == Phase4(0));
      }
}

TEST_CASE("mul matches dense matrix products including phases") {
  static const std::complex<double> kI(0, 1);
  for (std::size_t a = 0; a < 16; ++a)
    for (std::size_t b = 0; b < 16; ++b)
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb) {
          PauliObservable p{point(2, a), sa != 0};
          PauliObservable q{point(2, b), sb != 0};
          auto [r, phase] = mul(p, q);
          const oracle::DenseOperator dense = oracle::dense_pauli(p) * oracle::dense_pauli(q);
          const oracle::DenseOperator expect =
              std::pow(kI, phase.value()) * oracle::dense_pauli(r);
          CHECK((dense - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
}

TEST_CASE("commuting_mul folds the phase into the sign") {
  auto p = pauli_from_string("+XX");
  auto q = pauli_from_string("+ZZ");
  auto r = commuting_mul(p, q);
  CHECK(to_string(r) == "-YY");  // XX * ZZ = (XZ)(XZ) = (-iY)(-iY) = -YY
  const oracle::DenseOperator dense = oracle::dense_pauli(p) * oracle::dense_pauli(q);
  CHECK((dense - oracle::dense_pauli(r)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(commuting_mul(pauli_from_string("X"), pauli_from_string("Z")),
                  std::invalid_argument);
}

TEST_CASE("transpose flips the sign of Y-like observables") {
  CHECK(transposed(pauli_from_string("+Y")).sign);
  CHECK_FALSE(transposed(pauli_from_string("+X")).sign);
  CHECK_FALSE(transposed(pauli_from_string("+YY")).sign);
  CHECK(transposed(pauli_from_string("+YXY")).sign == false);
  CHECK(transposed(pauli_from_string("+YX_")).sign);
}

TEST_CASE("gram matrix pairs z with x per qubit") {
  BitMatrix j = symplectic_gram(2);
  CHECK(j == BitMatrix::from_rows({"0100", "1000", "0001", "0010"}));
}
