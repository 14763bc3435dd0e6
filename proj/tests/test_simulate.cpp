#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "stab/simulate.hpp"

using namespace stab;

namespace {

Circuit fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURES_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_circuit(text.str());
}

BitVector bits(const std::string& s) { return BitVector::from_string(s); }

}  // namespace

TEST_CASE("dyadic probabilities reduce and multiply") {
  CHECK(DyadicProb::make(4, 3) == DyadicProb{1, 1});
  CHECK(DyadicProb::make(0, 7) == DyadicProb::zero());
  CHECK(DyadicProb::make(1, 2).value() == 0.25);
  CHECK((DyadicProb::make(1, 1) * DyadicProb::make(1, 1)) == DyadicProb::make(1, 2));
  CHECK(DyadicProb::make(1, 1).to_string() == "1/2^1");
}

TEST_CASE("bell: classical tableau and probabilities") {
  auto ct = final_classical_tableau(fixture("bell.scf"));
  REQUIRE(ct.has_value());
  CHECK(ct->n_bits == 2);
  CHECK(ct->rank() == 1);
  CHECK(ct->m == BitMatrix::from_rows({"11"}));
  CHECK_FALSE(ct->c.get(0));
  CHECK(strong_prob(*ct, bits("00")) == DyadicProb::make(1, 1));
  CHECK(strong_prob(*ct, bits("11")) == DyadicProb::make(1, 1));
  CHECK(strong_prob(*ct, bits("01")) == DyadicProb::zero());
  CHECK(strong_prob(*ct, bits("10")) == DyadicProb::zero());
  CHECK_THROWS_AS(strong_prob(*ct, bits("0")), std::invalid_argument);
}

TEST_CASE("deterministic circuit: prep |1> measured") {
  auto ct = final_classical_tableau(parse_circuit("qubits 1\nPREP1 0\nMZ 0 -> m\n"));
  REQUIRE(ct.has_value());
  CHECK(ct->rank() == 1);
  CHECK(strong_prob(*ct, bits("1")) == DyadicProb::one());
  CHECK(strong_prob(*ct, bits("0")) == DyadicProb::zero());
}

TEST_CASE("chaotic preparation: no constraints, rank 0") {
  auto ct = final_classical_tableau(parse_circuit("qubits 1\nCHAOTIC 0\nMZ 0 -> m\n"));
  REQUIRE(ct.has_value());
  CHECK(ct->rank() == 0);
  CHECK(strong_prob(*ct, bits("0")) == DyadicProb::make(1, 1));
  CHECK(strong_prob(*ct, bits("1")) == DyadicProb::make(1, 1));
}

TEST_CASE("ghz3 probabilities and normalization") {
  auto ct = final_classical_tableau(fixture("ghz3.scf"));
  REQUIRE(ct.has_value());
  CHECK(strong_prob(*ct, bits("000")) == DyadicProb::make(1, 1));
  CHECK(strong_prob(*ct, bits("111")) == DyadicProb::make(1, 1));
  double total = 0;
  for (std::size_t x = 0; x < 8; ++x) {
    BitVector v(3);
    for (std::size_t i = 0; i < 3; ++i) v.set(i, (x >> i) & 1);
    total += strong_prob(*ct, v).value();
  }
  CHECK(total == 1.0);
}

TEST_CASE("strategies give the same classical tableau") {
  for (const char* name : {"bell.scf", "ghz3.scf", "teleport.scf"}) {
    auto a = final_classical_tableau(fixture(name), ContractionStrategy::sequential());
    auto b = final_classical_tableau(fixture(name), ContractionStrategy::channel_accumulate());
    auto g = final_classical_tableau(fixture(name), ContractionStrategy::greedy_min_width());
    REQUIRE(a.has_value());
    CHECK(a->m == b->m);
    CHECK(a->m == g->m);
    CHECK(a->c == b->c);
    CHECK(a->c == g->c);
  }
}

TEST_CASE("teleportation delivers the input state") {
  auto ct = final_classical_tableau(fixture("teleport.scf"));
  REQUIRE(ct.has_value());
  // Records a, b are uniform; out is deterministically 1.
  for (std::size_t x = 0; x < 8; ++x) {
    BitVector v(3);
    for (std::size_t i = 0; i < 3; ++i) v.set(i, (x >> i) & 1);
    const DyadicProb p = strong_prob(*ct, v);
    if (v.get(2))
      CHECK(p == DyadicProb::make(1, 2));
    else
      CHECK(p == DyadicProb::zero());
  }
}

TEST_CASE("post-selection conditions the distribution") {
  auto ct = final_classical_tableau(fixture("postselect.scf"));
  REQUIRE(ct.has_value());
  CHECK(ct->n_bits == 1);
  CHECK(strong_prob(*ct, bits("1")) == DyadicProb::one());
  CHECK(strong_prob(*ct, bits("0")) == DyadicProb::zero());
}

TEST_CASE("contradictory post-selection is infeasible") {
  CHECK_FALSE(final_classical_tableau(fixture("postselect_contradict.scf")).has_value());
  CHECK_FALSE(weak_sample(fixture("postselect_contradict.scf"), 3, 1).has_value());
}

TEST_CASE("open inputs are rejected for simulation") {
  CHECK_THROWS_AS(final_classical_tableau(parse_circuit("qubits 1\nH 0\nMZ 0 -> m\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(final_classical_tableau(parse_circuit("qubits 1\nPREP0 0\n")),
                  std::invalid_argument);
}

TEST_CASE("measure_outcome_kind classifies outcomes") {
  ChannelTableau zero(0, 1);
  zero.append_row(PhasePoint(0), pauli_from_string("Z").point, false);
  auto kz = measure_outcome_kind(zero, pauli_from_string("Z").point, false);
  REQUIRE(std::holds_alternative<Deterministic>(kz));
  CHECK_FALSE(std::get<Deterministic>(kz).bit);
  auto kzm = measure_outcome_kind(zero, pauli_from_string("Z").point, true);
  CHECK(std::get<Deterministic>(kzm).bit);
  auto kx = measure_outcome_kind(zero, pauli_from_string("X").point, false);
  CHECK(std::holds_alternative<UniformRandom>(kx));
}

TEST_CASE("weak sampling: support, determinism, statistics") {
  const Circuit bell = fixture("bell.scf");
  auto s1 = weak_sample(bell, 100, 42);
  auto s2 = weak_sample(bell, 100, 42);
  auto s3 = weak_sample(bell, 100, 43);
  REQUIRE(s1.has_value());
  CHECK(*s1 == *s2);
  CHECK(*s1 != *s3);
  auto ct = final_classical_tableau(bell);
  std::size_t zeros = 0;
  for (const auto& x : *s1) {
    CHECK(strong_prob(*ct, x).a > 0);
    if (!x.get(0)) ++zeros;
  }
  CHECK(zeros > 20);
  CHECK(zeros < 80);
}

TEST_CASE("weak sampling respects deterministic bits and post-selection") {
  auto det = weak_sample(parse_circuit("qubits 1\nPREP1 0\nMZ 0 -> m\n"), 5, 9);
  REQUIRE(det.has_value());
  for (const auto& x : *det) CHECK(x == bits("1"));

  auto post = weak_sample(fixture("postselect.scf"), 10, 5);
  REQUIRE(post.has_value());
  for (const auto& x : *post) CHECK(x == bits("1"));

  auto tele = weak_sample(fixture("teleport.scf"), 20, 5);
  REQUIRE(tele.has_value());
  std::set<std::string> seen;
  for (const auto& x : *tele) {
    CHECK(x.get(2));
    seen.insert(x.str());
  }
  CHECK(seen.size() > 1);  // a, b vary
}
