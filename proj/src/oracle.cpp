#include "stab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "stab/elements.hpp"

namespace stab::oracle {

namespace {

using Complex = std::complex<double>;

void check_size(std::size_t n_qubits) {
  if (n_qubits > kMaxDenseQubits)
    throw std::invalid_argument("dense oracle limited to 8 qubits");
}

// Bit of slot q inside an n-slot index; slot 0 is the most significant.
bool slot_bit(std::size_t index, std::size_t q, std::size_t n) {
  return (index >> (n - 1 - q)) & 1;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DenseOperator basis_ket(bool b) {
  DenseOperator k = DenseOperator::Zero(2, 1);
  k(b ? 1 : 0, 0) = 1.0;
  return k;
}

// (I + (-1)^m P(u|c)) / 2 on u's qubits.
DenseOperator projector(const PhasePoint& u, bool c, bool m) {
  const Eigen::Index dim = Eigen::Index(1) << u.n_qubits();
  const DenseOperator p = dense_pauli(PauliObservable{u, c != m});
  return (DenseOperator::Identity(dim, dim) + p) / 2.0;
}

}  // namespace

std::size_t ptm_index(const PhasePoint& u) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < u.bits().size(); ++i)
    if (u.bits().get(i)) idx |= std::size_t{1} << i;
  return idx;
}

PhasePoint ptm_point(std::size_t index, std::size_t n_qubits) {
  BitVector bits(2 * n_qubits);
  for (std::size_t i = 0; i < bits.size(); ++i) bits.set(i, (index >> i) & 1);
  return PhasePoint::from_bits(std::move(bits));
}

DenseOperator dense_pauli(const PauliObservable& p) {
  const std::size_t n = p.point.n_qubits();
  check_size(n);
  static const Complex kI(0, 1);
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (std::size_t q = 0; q < n; ++q) {
    DenseOperator f = DenseOperator::Identity(2, 2);
    if (p.point.z(q)) {
      f(1, 1) = -1.0;
    }
    if (p.point.x(q)) {
      DenseOperator x(2, 2);
      x << 0, 1, 1, 0;
      f = f * x;
    }
    out = kron(out, f);
  }
  const int phase = (4 - inner_zx(p.point).value()) % 4;
  static const Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex scale = kPhases[phase];
  if (p.sign) scale = -scale;
  return scale * out;
}

DensePTM ptm_of_tableau(const ChannelTableau& t) {
  check_size(t.n_in() + t.n_out());
  auto canon = t.canonical();
  if (!canon) throw std::invalid_argument("infeasible tableau has no PTM");
  const std::size_t k = canon->n_rows();
  const double scale = std::ldexp(1.0, static_cast<int>(t.n_in()) - static_cast<int>(t.n_out()));
  DensePTM ptm = DensePTM::Zero(Eigen::Index(1) << (2 * t.n_out()),
                                Eigen::Index(1) << (2 * t.n_in()));
  for (std::size_t a = 0; a < (std::size_t{1} << k); ++a) {
    BitVector alpha(k);
    for (std::size_t i = 0; i < k; ++i) alpha.set(i, (a >> i) & 1);
    auto [point, sign] = canon->group_element(alpha);
    const PhasePoint pa = PhasePoint::from_bits(point.slice(0, 2 * t.n_in()));
    const PhasePoint pb = PhasePoint::from_bits(point.slice(2 * t.n_in(), point.size()));
    ptm(static_cast<Eigen::Index>(ptm_index(pb)), static_cast<Eigen::Index>(ptm_index(pa))) +=
        sign ? -scale : scale;
  }
  return ptm;
}

std::vector<DenseOperator> kraus_of_element(const ElementKind& k) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (k.op) {
    case ElementOp::Prep0:
      return {basis_ket(false)};
    case ElementOp::Prep1:
      return {basis_ket(true)};
    case ElementOp::PrepPlus:
      return {inv_sqrt2 * (basis_ket(false) + basis_ket(true))};
    case ElementOp::PrepMinus:
      return {inv_sqrt2 * (basis_ket(false) - basis_ket(true))};
    case ElementOp::PrepChaotic:
      return {inv_sqrt2 * basis_ket(false), inv_sqrt2 * basis_ket(true)};
    case ElementOp::Discard:
      return {basis_ket(false).adjoint(), basis_ket(true).adjoint()};
    case ElementOp::Identity:
      return {DenseOperator::Identity(2, 2)};
    case ElementOp::DephaseZ:
      return {basis_ket(false) * basis_ket(false).adjoint(),
              basis_ket(true) * basis_ket(true).adjoint()};
    case ElementOp::DephaseX: {
      const DenseOperator plus = inv_sqrt2 * (basis_ket(false) + basis_ket(true));
      const DenseOperator minus = inv_sqrt2 * (basis_ket(false) - basis_ket(true));
      return {plus * plus.adjoint(), minus * minus.adjoint()};
    }
    case ElementOp::GateZ:
      return {dense_pauli(pauli_from_string("Z"))};
    case ElementOp::GateX:
      return {dense_pauli(pauli_from_string("X"))};
    case ElementOp::GateY:
      return {dense_pauli(pauli_from_string("Y"))};
    case ElementOp::GateH: {
      DenseOperator h(2, 2);
      h << 1, 1, 1, -1;
      return {inv_sqrt2 * h};
    }
    case ElementOp::GateS: {
      DenseOperator s = DenseOperator::Identity(2, 2);
      s(1, 1) = Complex(0, 1);
      return {s};
    }
    case ElementOp::GateCNOT: {
      DenseOperator u = DenseOperator::Zero(4, 4);
      u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
      return {u};
    }
    case ElementOp::GateCZ: {
      DenseOperator u = DenseOperator::Identity(4, 4);
      u(3, 3) = -1.0;
      return {u};
    }
    case ElementOp::PauliUnitary:
      return {dense_pauli(PauliObservable{k.u, false})};
    case ElementOp::CliffordUnitary:
      throw std::invalid_argument("no dense form for a general symplectic unitary");
    case ElementOp::MeasureObservable: {
      const std::size_t n = k.u.n_qubits();
      check_size(n);
      std::vector<DenseOperator> kraus;
      for (int m = 0; m < 2; ++m) {
        const DenseOperator pi = projector(k.u, k.c, m != 0);
        for (Eigen::Index i = 0; i < pi.rows(); ++i)
          kraus.push_back(basis_ket(m != 0) * pi.row(i));
      }
      return kraus;
    }
    case ElementOp::MeasureKeep: {
      std::vector<DenseOperator> kraus;
      for (int m = 0; m < 2; ++m)
        kraus.push_back(kron(projector(k.u, k.c, m != 0), basis_ket(m != 0)));
      return kraus;
    }
    case ElementOp::Postselect: {
      const DenseOperator pi = projector(k.u, k.c, false);
      std::vector<DenseOperator> kraus;
      for (Eigen::Index i = 0; i < pi.rows(); ++i) kraus.push_back(pi.row(i));
      return kraus;
    }
  }
  throw std::logic_error("unhandled element");
}

DensePTM ptm_of_kraus(const std::vector<DenseOperator>& kraus, std::size_t n_in,
                      std::size_t n_out) {
  check_size(n_in);
  check_size(n_out);
  const std::size_t in_points = std::size_t{1} << (2 * n_in);
  const std::size_t out_points = std::size_t{1} << (2 * n_out);
  const double scale = std::ldexp(1.0, -static_cast<int>(n_out));
  // Cache the output Paulis when that stays small.
  std::vector<DenseOperator> pv_cache;
  if (n_out <= 5)
    for (std::size_t v = 0; v < out_points; ++v)
      pv_cache.push_back(dense_pauli(PauliObservable{ptm_point(v, n_out), false}));
  DensePTM ptm(static_cast<Eigen::Index>(out_points), static_cast<Eigen::Index>(in_points));
  for (std::size_t u = 0; u < in_points; ++u) {
    const DenseOperator pu = dense_pauli(PauliObservable{ptm_point(u, n_in), false});
    DenseOperator image = DenseOperator::Zero(Eigen::Index(1) << n_out, Eigen::Index(1) << n_out);
    for (const auto& kop : kraus) image += kop * pu * kop.adjoint();
    for (std::size_t v = 0; v < out_points; ++v) {
      const DenseOperator& pv =
          pv_cache.empty()
              ? dense_pauli(PauliObservable{ptm_point(v, n_out), false})
              : pv_cache[v];
      ptm(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) =
          scale * (pv * image).trace().real();
    }
  }
  return ptm;
}

DensePTM ptm_of_dense(const ElementKind& k) {
  return ptm_of_kraus(kraus_of_element(k), k.arity_in(), k.arity_out());
}

std::vector<DenseOperator> expand_kraus(const std::vector<DenseOperator>& kraus,
                                        std::span<const std::size_t> in_targets,
                                        std::span<const std::size_t> out_targets,
                                        std::size_t ambient_in, std::size_t ambient_out) {
  check_size(ambient_in);
  check_size(ambient_out);
  if (ambient_in - in_targets.size() != ambient_out - out_targets.size())
    throw std::invalid_argument("expand_kraus: pass-through wire counts differ");

  std::vector<std::size_t> in_pass, out_pass;  // complement slots, ascending
  for (std::size_t q = 0; q < ambient_in; ++q)
    if (std::find(in_targets.begin(), in_targets.end(), q) == in_targets.end())
      in_pass.push_back(q);
  for (std::size_t q = 0; q < ambient_out; ++q)
    if (std::find(out_targets.begin(), out_targets.end(), q) == out_targets.end())
      out_pass.push_back(q);

  const std::size_t full_cols = std::size_t{1} << ambient_in;
  const std::size_t t_out = out_targets.size();
  std::vector<DenseOperator> out;
  for (const auto& kop : kraus) {
    DenseOperator full = DenseOperator::Zero(Eigen::Index(1) << ambient_out,
                                             static_cast<Eigen::Index>(full_cols));
    for (std::size_t c = 0; c < full_cols; ++c) {
      std::size_t c_t = 0;
      for (std::size_t j = 0; j < in_targets.size(); ++j)
        if (slot_bit(c, in_targets[j], ambient_in))
          c_t |= std::size_t{1} << (in_targets.size() - 1 - j);
      for (std::size_t rt = 0; rt < (std::size_t{1} << t_out); ++rt) {
        if (kop(static_cast<Eigen::Index>(rt), static_cast<Eigen::Index>(c_t)) == 0.0)
          continue;
        std::size_t r = 0;
        for (std::size_t j = 0; j < t_out; ++j)
          if (slot_bit(rt, j, t_out))
            r |= std::size_t{1} << (ambient_out - 1 - out_targets[j]);
        for (std::size_t j = 0; j < in_pass.size(); ++j)
          if (slot_bit(c, in_pass[j], ambient_in))
            r |= std::size_t{1} << (ambient_out - 1 - out_pass[j]);
        full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            kop(static_cast<Eigen::Index>(rt), static_cast<Eigen::Index>(c_t));
      }
    }
    out.push_back(std::move(full));
  }
  return out;
}

DenseOperator choi_of_tableau(const ChannelTableau& t) {
  const std::size_t n = t.n_in() + t.n_out();
  check_size(n);
  auto canon = t.choi_state().canonical();
  if (!canon) throw std::invalid_argument("infeasible tableau has no Choi state");
  const std::size_t k = canon->n_rows();
  const Eigen::Index dim = Eigen::Index(1) << n;
  DenseOperator sigma = DenseOperator::Zero(dim, dim);
  for (std::size_t a = 0; a < (std::size_t{1} << k); ++a) {
    BitVector alpha(k);
    for (std::size_t i = 0; i < k; ++i) alpha.set(i, (a >> i) & 1);
    auto [point, sign] = canon->group_element(alpha);
    sigma += dense_pauli(PauliObservable{PhasePoint::from_bits(point), sign});
  }
  return std::ldexp(1.0, -static_cast<int>(n)) * sigma;
}

std::vector<CircuitStep> circuit_steps(const Circuit& c) {
  std::vector<CircuitStep> steps;
  std::vector<std::optional<std::size_t>> qubit_wire(c.n_qubits);
  std::map<std::string, std::size_t> record_wire;
  std::vector<std::pair<std::string, bool>> records;  // (name, postselected)
  std::size_t width = 0;

  auto drop = [&](std::size_t w) {
    for (auto& ow : qubit_wire)
      if (ow && *ow > w) --*ow;
    for (auto& [name, rw] : record_wire)
      if (rw > w) --rw;
    --width;
  };

  for (const auto& ins : c.instructions) {
    CircuitStep st;
    st.kind = ins.kind;
    st.ambient_in = width;
    switch (ins.kind.op) {
      case ElementOp::Prep0:
      case ElementOp::Prep1:
      case ElementOp::PrepPlus:
      case ElementOp::PrepMinus:
      case ElementOp::PrepChaotic:
        st.out_targets = {width};
        qubit_wire[ins.targets[0]] = width;
        ++width;
        break;
      case ElementOp::Discard: {
        const std::size_t w = *qubit_wire[ins.targets[0]];
        st.in_targets = {w};
        qubit_wire[ins.targets[0]] = std::nullopt;
        drop(w);
        break;
      }
      case ElementOp::MeasureObservable: {
        for (auto q : ins.targets) st.in_targets.push_back(*qubit_wire[q]);
        for (auto q : ins.targets) qubit_wire[q] = std::nullopt;
        std::vector<std::size_t> measured = st.in_targets;
        std::sort(measured.begin(), measured.end(), std::greater<>());
        for (auto w : measured) drop(w);
        st.out_targets = {width};
        record_wire[ins.record] = width;
        records.emplace_back(ins.record, false);
        ++width;
        break;
      }
      case ElementOp::MeasureKeep: {
        for (auto q : ins.targets) st.in_targets.push_back(*qubit_wire[q]);
        st.out_targets = st.in_targets;
        st.out_targets.push_back(width);
        record_wire[ins.record] = width;
        records.emplace_back(ins.record, false);
        ++width;
        break;
      }
      case ElementOp::Postselect: {
        const std::size_t w = record_wire.at(ins.record);
        st.in_targets = {w};
        for (auto& [name, ps] : records)
          if (name == ins.record) ps = true;
        record_wire.erase(ins.record);
        drop(w);
        break;
      }
      default:  // unitaries, dephasings, identity
        for (auto q : ins.targets) st.in_targets.push_back(*qubit_wire[q]);
        st.out_targets = st.in_targets;
        break;
    }
    st.ambient_out = width;
    steps.push_back(std::move(st));
  }

  // Relabel into boundary order: records in statement order, then live
  // qubits ascending.
  std::vector<std::size_t> boundary;
  for (const auto& [name, postselected] : records)
    if (!postselected) boundary.push_back(record_wire.at(name));
  for (std::size_t q = 0; q < c.n_qubits; ++q)
    if (qubit_wire[q]) boundary.push_back(*qubit_wire[q]);
  std::vector<std::size_t> perm(width);
  bool trivial = true;
  for (std::size_t slot = 0; slot < boundary.size(); ++slot) {
    perm[boundary[slot]] = slot;
    if (boundary[slot] != slot) trivial = false;
  }
  if (!trivial) {
    CircuitStep st;
    st.ambient_in = st.ambient_out = width;
    st.permutation = std::move(perm);
    steps.push_back(std::move(st));
  }
  return steps;
}

ChannelTableau tableau_of_step(const CircuitStep& s) {
  if (!s.permutation.empty()) {
    std::vector<std::size_t> in_targets(s.ambient_in);
    for (std::size_t q = 0; q < s.ambient_in; ++q) in_targets[q] = q;
    return ChannelTableau::identity(s.ambient_in)
        .embedded(in_targets, s.permutation, s.ambient_in, s.ambient_out);
  }
  return element_tableau(s.kind).embedded(s.in_targets, s.out_targets, s.ambient_in,
                                          s.ambient_out);
}

namespace {

// PTM of (element (x) identity wires), assembled by index bookkeeping: a
// product channel's transfer matrix factorizes over the wires exactly.
DensePTM ptm_embed(const DensePTM& el, std::span<const std::size_t> in_targets,
                   std::span<const std::size_t> out_targets, std::size_t ambient_in,
                   std::size_t ambient_out) {
  check_size(ambient_in);
  check_size(ambient_out);
  std::vector<std::size_t> in_pass, out_pass;
  for (std::size_t q = 0; q < ambient_in; ++q)
    if (std::find(in_targets.begin(), in_targets.end(), q) == in_targets.end())
      in_pass.push_back(q);
  for (std::size_t q = 0; q < ambient_out; ++q)
    if (std::find(out_targets.begin(), out_targets.end(), q) == out_targets.end())
      out_pass.push_back(q);
  auto pair_of = [](std::size_t point, std::size_t q) { return (point >> (2 * q)) & 3; };
  const std::size_t in_points = std::size_t{1} << (2 * ambient_in);
  const std::size_t t_out_points = std::size_t{1} << (2 * out_targets.size());
  DensePTM full = DensePTM::Zero(Eigen::Index(1) << (2 * ambient_out),
                                 static_cast<Eigen::Index>(in_points));
  for (std::size_t u = 0; u < in_points; ++u) {
    std::size_t u_t = 0;
    for (std::size_t j = 0; j < in_targets.size(); ++j)
      u_t |= pair_of(u, in_targets[j]) << (2 * j);
    std::size_t v_pass = 0;
    for (std::size_t j = 0; j < in_pass.size(); ++j)
      v_pass |= pair_of(u, in_pass[j]) << (2 * out_pass[j]);
    for (std::size_t vt = 0; vt < t_out_points; ++vt) {
      const double entry =
          el(static_cast<Eigen::Index>(vt), static_cast<Eigen::Index>(u_t));
      if (entry == 0.0) continue;
      std::size_t v = v_pass;
      for (std::size_t j = 0; j < out_targets.size(); ++j)
        v |= pair_of(vt, j) << (2 * out_targets[j]);
      full(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = entry;
    }
  }
  return full;
}

}  // namespace

DensePTM ptm_of_step_dense(const CircuitStep& s) {
  if (!s.permutation.empty()) {
    // A wire relabeling permutes the index pairs and nothing else.
    const std::size_t n = s.ambient_in;
    check_size(n);
    const std::size_t points = std::size_t{1} << (2 * n);
    DensePTM full = DensePTM::Zero(static_cast<Eigen::Index>(points),
                                   static_cast<Eigen::Index>(points));
    for (std::size_t u = 0; u < points; ++u) {
      std::size_t v = 0;
      for (std::size_t q = 0; q < n; ++q)
        v |= ((u >> (2 * q)) & 3) << (2 * s.permutation[q]);
      full(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = 1.0;
    }
    return full;
  }
  return ptm_embed(ptm_of_dense(s.kind), s.in_targets, s.out_targets, s.ambient_in,
                   s.ambient_out);
}

DensePTM ptm_of_circuit_dense(const Circuit& c) {
  DensePTM ptm = DensePTM::Identity(1, 1);
  for (const auto& st : circuit_steps(c)) ptm = ptm_of_step_dense(st) * ptm;
  return ptm;
}

Eigen::VectorXd dense_output_probs(const Circuit& c) {
  const DensePTM ptm = ptm_of_circuit_dense(c);
  if (ptm.cols() != 1) throw std::invalid_argument("circuit has open quantum inputs");
  std::size_t n = 0;
  while ((Eigen::Index(1) << (2 * n)) < ptm.rows()) ++n;
  const Eigen::Index dim = Eigen::Index(1) << n;
  DenseOperator rho = DenseOperator::Zero(dim, dim);
  for (std::size_t v = 0; v < static_cast<std::size_t>(ptm.rows()); ++v)
    if (ptm(static_cast<Eigen::Index>(v), 0) != 0.0)
      rho += ptm(static_cast<Eigen::Index>(v), 0) *
             dense_pauli(PauliObservable{ptm_point(v, n), false});
  Eigen::VectorXd probs(dim);
  for (Eigen::Index x = 0; x < dim; ++x) probs(x) = rho(x, x).real();
  const double total = probs.sum();
  if (total > 1e-12) probs /= total;
  return probs;
}

}  // namespace stab::oracle
