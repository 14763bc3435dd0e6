#include "stab/simulate.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "stab/elements.hpp"

namespace stab {

DyadicProb DyadicProb::make(std::uint64_t a, std::uint32_t b) {
  if (a == 0) return {0, 0};
  while ((a & 1) == 0 && b > 0) {
    a >>= 1;
    --b;
  }
  return {a, b};
}

double DyadicProb::value() const { return std::ldexp(static_cast<double>(a), -static_cast<int>(b)); }

DyadicProb DyadicProb::operator*(const DyadicProb& o) const {
  return make(a * o.a, b + o.b);
}

std::string DyadicProb::to_string() const {
  std::ostringstream os;
  os << a << "/2^" << b;
  return os.str();
}

std::optional<ClassicalTableau> final_classical_tableau(const Circuit& circ,
                                                        const ContractionStrategy& strategy) {
  const Diagram d = Diagram::from_circuit(circ);
  if (!d.inputs().empty())
    throw std::invalid_argument("circuit has open quantum inputs");
  if (d.outputs().size() != circ.output_records().size())
    throw std::invalid_argument("circuit leaves live qubits unmeasured");
  auto t = d.contract_all(strategy);
  if (!t) return std::nullopt;
  const std::size_t n = t->n_out();
  ClassicalTableau ct;
  ct.n_bits = n;
  ct.m = BitMatrix(t->n_rows(), n);
  ct.c = BitVector(t->n_rows());
  for (std::size_t r = 0; r < t->n_rows(); ++r) {
    const PhasePoint b = t->b_part(r);
    for (std::size_t q = 0; q < n; ++q) {
      if (b.x(q))
        throw std::logic_error("non-dephased output wire in classical tableau");
      ct.m.set(r, q, b.z(q));
    }
    ct.c.set(r, t->sign(r));
  }
  return ct;
}

DyadicProb strong_prob(const ClassicalTableau& ct, const BitVector& x) {
  if (x.size() != ct.n_bits) throw std::invalid_argument("outcome length mismatch");
  for (std::size_t r = 0; r < ct.m.n_rows(); ++r)
    if ((dot_count(ct.m.row(r), x) & 1) != static_cast<std::size_t>(ct.c.get(r)))
      return DyadicProb::zero();
  return DyadicProb::make(1, static_cast<std::uint32_t>(ct.n_bits - ct.rank()));
}

OutcomeKind measure_outcome_kind(const ChannelTableau& t, const PhasePoint& u, bool c) {
  if (t.n_in() != 0) throw std::invalid_argument("measure_outcome_kind wants a state tableau");
  BitMatrix points(0, 2 * t.n_out());
  for (std::size_t r = 0; r < t.n_rows(); ++r) points.append_row(t.point_row(r));
  auto alpha = solve_membership(points, u.bits());
  if (!alpha) return UniformRandom{};
  auto [point, s] = t.group_element(*alpha);
  return Deterministic{s != c};
}

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Live quantum frontier of one shot: a state tableau plus the map from
// circuit qubits to its output wires.
struct Frontier {
  ChannelTableau state{0, 0};
  std::vector<std::optional<std::size_t>> wire;

  explicit Frontier(std::size_t n_qubits) : wire(n_qubits) {}

  std::size_t add_wire(std::size_t q) {
    wire[q] = state.n_out() - 1;
    return *wire[q];
  }

  void drop_wire(std::size_t q) {
    const std::size_t w = *wire[q];
    state = state.discarded(w);
    wire[q] = std::nullopt;
    for (auto& ow : wire)
      if (ow && *ow > w) --*ow;
  }

  // Pauli point on the frontier wires for an instruction-level point.
  PhasePoint lift(const PhasePoint& u, const std::vector<std::size_t>& targets) const {
    PhasePoint out(state.n_out());
    for (std::size_t j = 0; j < targets.size(); ++j) {
      out.set_z(*wire[targets[j]], u.z(j));
      out.set_x(*wire[targets[j]], u.x(j));
    }
    return out;
  }

  // Composes the projection (I + P(u|c))/2 into the state. False on
  // contradiction.
  bool project(const PhasePoint& u, bool c) {
    auto next = ChannelTableau::compose(project_observable_tableau(u, c), state);
    if (!next) return false;
    next->set_trace_preserving(true);  // frontier stays a (sub)normalized state
    state = std::move(*next);
    return true;
  }
};

}  // namespace

std::optional<std::vector<BitVector>> weak_sample(const Circuit& circ, std::size_t shots,
                                                  std::uint64_t seed) {
  // Post-selections force their measurement branch up front.
  std::map<std::string, bool> forced;
  for (const auto& ins : circ.instructions)
    if (ins.kind.op == ElementOp::Postselect) forced[ins.record] = ins.kind.c;

  std::vector<BitVector> out;
  out.reserve(shots);
  for (std::size_t shot = 0; shot < shots; ++shot) {
    std::uint64_t rng = seed + shot * 0x9E3779B97F4A7C15ULL;
    Frontier f(circ.n_qubits);
    std::vector<bool> bits;
    for (const auto& ins : circ.instructions) {
      switch (ins.kind.op) {
        case ElementOp::Prep0:
        case ElementOp::Prep1:
        case ElementOp::PrepPlus:
        case ElementOp::PrepMinus:
        case ElementOp::PrepChaotic:
          f.state = ChannelTableau::tensor(f.state, element_tableau(ins.kind));
          f.add_wire(ins.targets[0]);
          break;
        case ElementOp::Discard:
          f.drop_wire(ins.targets[0]);
          break;
        case ElementOp::GateH:
        case ElementOp::GateS:
        case ElementOp::GateX:
        case ElementOp::GateY:
        case ElementOp::GateZ:
        case ElementOp::GateCNOT:
        case ElementOp::GateCZ:
        case ElementOp::PauliUnitary:
        case ElementOp::CliffordUnitary: {
          std::vector<std::size_t> wires;
          for (auto q : ins.targets) wires.push_back(*f.wire[q]);
          f.state.apply_output_unitary(element_tableau(ins.kind), wires);
          break;
        }
        case ElementOp::Identity:
          break;
        case ElementOp::DephaseZ:
        case ElementOp::DephaseX: {
          std::vector<std::size_t> wires{*f.wire[ins.targets[0]]};
          const ChannelTableau op = element_tableau(ins.kind)
                                        .embedded(wires, f.state.n_out());
          auto next = ChannelTableau::compose(op, f.state);
          f.state = std::move(*next);
          break;
        }
        case ElementOp::MeasureObservable:
        case ElementOp::MeasureKeep: {
          const PhasePoint u = f.lift(ins.kind.u, ins.targets);
          const bool c = ins.kind.c;
          const OutcomeKind kind = measure_outcome_kind(f.state, u, c);
          const auto it = forced.find(ins.record);
          bool m;
          if (std::holds_alternative<Deterministic>(kind)) {
            m = std::get<Deterministic>(kind).bit;
            if (it != forced.end() && it->second != m) return std::nullopt;
          } else if (it != forced.end()) {
            m = it->second;
          } else {
            m = (splitmix64(rng) >> 63) != 0;
          }
          if (!f.project(u, c != m)) return std::nullopt;
          if (ins.kind.op == ElementOp::MeasureObservable)
            for (auto q : ins.targets) f.drop_wire(q);
          if (it == forced.end()) bits.push_back(m);
          break;
        }
        case ElementOp::Postselect:
          break;
      }
    }
    BitVector bv(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) bv.set(i, bits[i]);
    out.push_back(std::move(bv));
  }
  return out;
}

}  // namespace stab
