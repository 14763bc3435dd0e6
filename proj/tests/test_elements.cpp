#include <doctest.h>

#include <stdexcept>

#include "stab/elements.hpp"

using namespace stab;

namespace {

std::string text_of(ElementOp op) { return element_tableau(ElementKind::simple(op)).to_text(); }

}  // namespace

TEST_CASE("elementary tableaux: frozen rows") {
  CHECK(text_of(ElementOp::PrepChaotic) == "channel 0 -> 1\n");
  CHECK(text_of(ElementOp::Prep0) == "channel 0 -> 1\n|10|0\n");
  CHECK(text_of(ElementOp::Prep1) == "channel 0 -> 1\n|10|1\n");
  CHECK(text_of(ElementOp::PrepPlus) == "channel 0 -> 1\n|01|0\n");
  CHECK(text_of(ElementOp::PrepMinus) == "channel 0 -> 1\n|01|1\n");
  CHECK(text_of(ElementOp::Discard) == "channel 1 -> 0\n");
  CHECK(text_of(ElementOp::Identity) == "channel 1 -> 1\n10|10|0\n01|01|0\n");
  CHECK(text_of(ElementOp::DephaseZ) == "channel 1 -> 1\n10|10|0\n");
  CHECK(text_of(ElementOp::DephaseX) == "channel 1 -> 1\n01|01|0\n");
  CHECK(text_of(ElementOp::GateZ) == "channel 1 -> 1\n10|10|0\n01|01|1\n");
  CHECK(text_of(ElementOp::GateX) == "channel 1 -> 1\n10|10|1\n01|01|0\n");
  CHECK(text_of(ElementOp::GateH) == "channel 1 -> 1\n10|01|0\n01|10|0\n");
  CHECK(text_of(ElementOp::GateS) == "channel 1 -> 1\n10|10|0\n01|11|0\n");
  CHECK(text_of(ElementOp::GateCNOT) ==
        "channel 2 -> 2\n1000|1000|0\n0100|0101|0\n0010|1010|0\n0001|0001|0\n");
  CHECK(text_of(ElementOp::GateCZ) ==
        "channel 2 -> 2\n1000|1000|0\n0100|0110|0\n0010|0010|0\n0001|1001|0\n");
}

TEST_CASE("all elementary tableaux validate") {
  for (auto op : {ElementOp::PrepChaotic, ElementOp::Prep0, ElementOp::Prep1,
                  ElementOp::PrepPlus, ElementOp::PrepMinus, ElementOp::Discard,
                  ElementOp::Identity, ElementOp::DephaseZ, ElementOp::DephaseX,
                  ElementOp::GateZ, ElementOp::GateX, ElementOp::GateY, ElementOp::GateH,
                  ElementOp::GateS, ElementOp::GateCNOT, ElementOp::GateCZ}) {
    std::string why;
    CHECK_MESSAGE(element_tableau(ElementKind::simple(op)).validate(&why), why);
  }
}

TEST_CASE("pauli unitary tableau: Y flips Z and X") {
  auto t = pauli_unitary_tableau(pauli_from_string("Y").point);
  CHECK(t == element_tableau(ElementKind::simple(ElementOp::GateY)));
  CHECK(t.to_text() == "channel 1 -> 1\n10|10|1\n01|01|1\n");
}

TEST_CASE("clifford unitary tableau checks symplecticity") {
  // H as an explicit symplectic matrix (swaps z and x columns).
  BitMatrix s = BitMatrix::from_rows({"01", "10"});
  auto h = clifford_unitary_tableau(s, BitVector(2));
  CHECK(h == element_tableau(ElementKind::simple(ElementOp::GateH)));
  BitMatrix bad = BitMatrix::from_rows({"11", "11"});  // singular
  CHECK_THROWS_AS(clifford_unitary_tableau(bad, BitVector(2)), std::invalid_argument);
}

TEST_CASE("measurement tableau is a trace-preserving channel to one bit") {
  auto t = measurement_tableau(pauli_from_string("ZZ").point, false);
  CHECK(t.n_in() == 2);
  CHECK(t.n_out() == 1);
  CHECK(t.trace_preserving());
  CHECK(t.validate());
  CHECK(t.to_text() == "channel 2 -> 1\n1010|10|0\n");
}

TEST_CASE("centralizer basis spans the commutant") {
  auto u = pauli_from_string("XZ").point;
  BitMatrix basis = centralizer_basis(u);
  CHECK(basis.n_rows() == 3);  // dimension 2n-1
  for (std::size_t r = 0; r < basis.n_rows(); ++r)
    CHECK_FALSE(symplectic_form(PhasePoint::from_bits(basis.row(r)), u));
}

TEST_CASE("measure-keep passes the system through and appends the record") {
  auto t = measure_keep_tableau(pauli_from_string("X").point, false);
  CHECK(t.n_in() == 1);
  CHECK(t.n_out() == 2);
  CHECK(t.validate());
  CHECK(t.trace_preserving());
  // The group must contain the record correlation _ -> +X Z.
  auto canon = *t.canonical();
  bool has_record_element = false;
  for (std::size_t a = 0; a < (std::size_t{1} << canon.n_rows()); ++a) {
    BitVector alpha(canon.n_rows());
    for (std::size_t i = 0; i < alpha.size(); ++i) alpha.set(i, (a >> i) & 1);
    auto [pt, sign] = canon.group_element(alpha);
    if (!sign && pt.slice(0, 2).is_zero() &&
        pt.slice(2, 6) == pauli_from_string("XZ").point.bits())
      has_record_element = true;
  }
  CHECK(has_record_element);
}

TEST_CASE("postselect and projection tableaux are not trace preserving") {
  auto post = postselect_tableau(pauli_from_string("Z").point, true);
  CHECK(post.n_in() == 1);
  CHECK(post.n_out() == 0);
  CHECK_FALSE(post.trace_preserving());
  CHECK(post.validate());
  CHECK(post.to_text() == "channel 1 -> 0 non-tp\n10||1\n");

  auto proj = project_observable_tableau(pauli_from_string("Z").point, false);
  CHECK(proj.n_in() == 1);
  CHECK(proj.n_out() == 1);
  CHECK_FALSE(proj.trace_preserving());
  CHECK(proj.validate());
}

TEST_CASE("arities") {
  CHECK(ElementKind::simple(ElementOp::Prep0).arity_in() == 0);
  CHECK(ElementKind::simple(ElementOp::Prep0).arity_out() == 1);
  CHECK(ElementKind::simple(ElementOp::Discard).arity_in() == 1);
  CHECK(ElementKind::simple(ElementOp::Discard).arity_out() == 0);
  CHECK(ElementKind::simple(ElementOp::GateCNOT).arity_in() == 2);
  auto m = ElementKind::measure(pauli_from_string("XX").point, false);
  CHECK(m.arity_in() == 2);
  CHECK(m.arity_out() == 1);
  auto mk = ElementKind::measure_keep(pauli_from_string("XX").point, false);
  CHECK(mk.arity_in() == 2);
  CHECK(mk.arity_out() == 3);
  auto ps = ElementKind::postselect(pauli_from_string("Z").point, true);
  CHECK(ps.arity_in() == 1);
  CHECK(ps.arity_out() == 0);
}
