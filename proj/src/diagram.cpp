#include "stab/diagram.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stab {

std::size_t Diagram::add_vertex(ChannelTableau t) {
  const std::size_t id = next_vertex_++;
  vertices_.emplace(id, std::move(t));
  return id;
}

std::size_t Diagram::add_edge(std::size_t src_vertex, std::size_t src_port,
                              std::size_t dst_vertex, std::size_t dst_port) {
  const std::size_t id = next_edge_++;
  edges_.emplace(id, DiagramEdge{src_vertex, src_port, dst_vertex, dst_port});
  return id;
}

Diagram Diagram::from_circuit(const Circuit& c) {
  Diagram d;
  struct Producer {
    bool live = false;
    WireRef wire;
  };
  std::vector<Producer> producers(c.n_qubits);
  std::vector<std::pair<std::size_t, WireRef>> open_inputs;  // (qubit, consumer)
  std::vector<std::pair<std::string, WireRef>> records;
  std::map<std::string, std::size_t> record_slot;

  for (const auto& ins : c.instructions) {
    if (ins.kind.op == ElementOp::Postselect) {
      const std::size_t v = d.add_vertex(element_tableau(ins.kind));
      const WireRef src = records[record_slot.at(ins.record)].second;
      d.add_edge(src.vertex, src.port, v, 0);
      records[record_slot.at(ins.record)].first.clear();  // consumed
      continue;
    }
    const std::size_t v = d.add_vertex(element_tableau(ins.kind));
    for (std::size_t j = 0; j < ins.targets.size(); ++j) {
      const std::size_t q = ins.targets[j];
      if (ins.kind.arity_in() == 0) break;  // preparations have no input ports
      if (producers[q].live) {
        d.add_edge(producers[q].wire.vertex, producers[q].wire.port, v, j);
      } else {
        open_inputs.emplace_back(q, WireRef{v, j});
      }
    }
    const bool destructive_measure = ins.kind.op == ElementOp::MeasureObservable;
    switch (ins.kind.op) {
      case ElementOp::Discard:
        producers[ins.targets[0]].live = false;
        break;
      case ElementOp::MeasureObservable:
        for (auto q : ins.targets) producers[q].live = false;
        break;
      default:
        for (std::size_t j = 0; j < ins.targets.size(); ++j)
          producers[ins.targets[j]] = {true, WireRef{v, j}};
        break;
    }
    if (!ins.record.empty()) {
      const std::size_t record_port = destructive_measure ? 0 : ins.targets.size();
      record_slot[ins.record] = records.size();
      records.emplace_back(ins.record, WireRef{v, record_port});
    }
  }

  std::sort(open_inputs.begin(), open_inputs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [q, wire] : open_inputs) d.inputs_.push_back(wire);
  for (const auto& [name, wire] : records)
    if (!name.empty()) d.outputs_.push_back(wire);
  for (std::size_t q = 0; q < c.n_qubits; ++q)
    if (producers[q].live) d.outputs_.push_back(producers[q].wire);
  return d;
}

bool Diagram::has_path(std::size_t a, std::size_t b) const {
  std::set<std::size_t> seen{a};
  std::vector<std::size_t> stack{a};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v == b) return true;
    for (const auto& [id, e] : edges_)
      if (e.src_vertex == v && seen.insert(e.dst_vertex).second)
        stack.push_back(e.dst_vertex);
  }
  return false;
}

std::optional<std::size_t> Diagram::contract_pair(std::size_t s, std::size_t d) {
  if (s == d) throw std::invalid_argument("contract_pair: self loop");
  const ChannelTableau& ts = vertices_.at(s);
  const ChannelTableau& td = vertices_.at(d);

  // Shared edges, ordered by the source port.
  std::vector<std::pair<std::size_t, DiagramEdge>> shared;
  for (const auto& [id, e] : edges_)
    if (e.src_vertex == s && e.dst_vertex == d) shared.emplace_back(id, e);
  std::sort(shared.begin(), shared.end(),
            [](const auto& a, const auto& b) { return a.second.src_port < b.second.src_port; });
  const std::size_t m = shared.size();

  std::vector<bool> s_out_shared(ts.n_out(), false);
  std::vector<bool> d_in_shared(td.n_in(), false);
  std::vector<std::size_t> d_in_mid(td.n_in(), 0);  // d input port -> mid slot
  for (const auto& [id, e] : shared) {
    s_out_shared[e.src_port] = true;
    d_in_shared[e.dst_port] = true;
    d_in_mid[e.dst_port] = e.src_port;
  }
  std::size_t next_tail = ts.n_out();
  for (std::size_t p = 0; p < td.n_in(); ++p)
    if (!d_in_shared[p]) d_in_mid[p] = next_tail++;
  const std::size_t n_mid = next_tail;

  // Unshared-output ranks of s (they pass through to the composite output).
  std::vector<std::size_t> s_out_rank(ts.n_out(), 0);
  std::size_t rank = 0;
  for (std::size_t p = 0; p < ts.n_out(); ++p)
    if (!s_out_shared[p]) s_out_rank[p] = rank++;
  const std::size_t s_pass = rank;

  const std::size_t comp_in = ts.n_in() + (td.n_in() - m);
  const std::size_t comp_out = s_pass + td.n_out();

  // Layer 1: s on its own wires, identity on d's unshared inputs.
  std::vector<std::size_t> s_in_targets(ts.n_in());
  std::vector<std::size_t> s_out_targets(ts.n_out());
  for (std::size_t p = 0; p < ts.n_in(); ++p) s_in_targets[p] = p;
  for (std::size_t p = 0; p < ts.n_out(); ++p) s_out_targets[p] = p;
  const ChannelTableau layer1 = ts.embedded(s_in_targets, s_out_targets, comp_in, n_mid);

  // Layer 2: d consumes its mid slots, identity on s's pass-through wires.
  std::vector<std::size_t> d_in_targets(td.n_in());
  std::vector<std::size_t> d_out_targets(td.n_out());
  for (std::size_t p = 0; p < td.n_in(); ++p) d_in_targets[p] = d_in_mid[p];
  for (std::size_t p = 0; p < td.n_out(); ++p) d_out_targets[p] = s_pass + p;
  const ChannelTableau layer2 = td.embedded(d_in_targets, d_out_targets, n_mid, comp_out);

  auto merged = ChannelTableau::compose(layer2, layer1);
  if (!merged) return std::nullopt;

  const std::size_t nv = add_vertex(std::move(*merged));

  // Rewire edges and boundary references to the composite ports.
  auto remap_in = [&](const WireRef& w) -> std::optional<WireRef> {
    if (w.vertex == s) return WireRef{nv, w.port};
    if (w.vertex == d) {
      std::size_t r = 0;
      for (std::size_t p = 0; p < w.port; ++p)
        if (!d_in_shared[p]) ++r;
      return WireRef{nv, ts.n_in() + r};
    }
    return std::nullopt;
  };
  auto remap_out = [&](const WireRef& w) -> std::optional<WireRef> {
    if (w.vertex == s) return WireRef{nv, s_out_rank[w.port]};
    if (w.vertex == d) return WireRef{nv, s_pass + w.port};
    return std::nullopt;
  };

  for (const auto& [id, e] : shared) edges_.erase(id);
  for (auto& [id, e] : edges_) {
    if (auto w = remap_out(WireRef{e.src_vertex, e.src_port})) {
      e.src_vertex = w->vertex;
      e.src_port = w->port;
    }
    if (auto w = remap_in(WireRef{e.dst_vertex, e.dst_port})) {
      e.dst_vertex = w->vertex;
      e.dst_port = w->port;
    }
  }
  for (auto& w : inputs_)
    if (auto nw = remap_in(w)) w = *nw;
  for (auto& w : outputs_)
    if (auto nw = remap_out(w)) w = *nw;
  vertices_.erase(s);
  vertices_.erase(d);
  return nv;
}

std::optional<std::size_t> Diagram::contract_edge(std::size_t edge_id) {
  auto it = edges_.find(edge_id);
  if (it == edges_.end()) throw std::out_of_range("contract_edge: no such edge");
  const std::size_t s = it->second.src_vertex;
  const std::size_t d = it->second.dst_vertex;
  // A cycle would appear iff an alternate path s -> d survives contraction.
  Diagram probe = *this;
  std::vector<std::size_t> direct;
  for (const auto& [id, e] : probe.edges_)
    if (e.src_vertex == s && e.dst_vertex == d) direct.push_back(id);
  for (auto id : direct) probe.edges_.erase(id);
  if (probe.has_path(s, d))
    throw std::invalid_argument("contract_edge: contraction would create a cycle");
  return contract_pair(s, d);
}

std::size_t Diagram::merge_parallel(std::size_t v1, std::size_t v2) {
  if (v1 == v2) throw std::invalid_argument("merge_parallel: identical vertices");
  if (has_path(v1, v2) || has_path(v2, v1))
    throw std::invalid_argument("merge_parallel: a directed path connects the vertices");
  auto merged = contract_pair(v1, v2);  // no shared edges: pure tensor
  return *merged;
}

std::optional<ChannelTableau> Diagram::finalize(std::optional<ChannelTableau> tableau,
                                                std::size_t vertex) const {
  if (!tableau) return std::nullopt;
  std::vector<std::size_t> in_targets(tableau->n_in());
  std::vector<std::size_t> out_targets(tableau->n_out());
  if (inputs_.size() != tableau->n_in() || outputs_.size() != tableau->n_out())
    throw std::logic_error("contract_all: boundary does not cover the final vertex");
  for (std::size_t slot = 0; slot < inputs_.size(); ++slot) {
    if (inputs_[slot].vertex != vertex)
      throw std::logic_error("contract_all: dangling boundary input");
    in_targets[inputs_[slot].port] = slot;
  }
  for (std::size_t slot = 0; slot < outputs_.size(); ++slot) {
    if (outputs_[slot].vertex != vertex)
      throw std::logic_error("contract_all: dangling boundary output");
    out_targets[outputs_[slot].port] = slot;
  }
  const ChannelTableau ordered =
      tableau->embedded(in_targets, out_targets, tableau->n_in(), tableau->n_out());
  return ordered.canonical();
}

std::optional<ChannelTableau> Diagram::contract_all(const ContractionStrategy& s) const {
  Diagram work = *this;
  if (work.vertices_.empty()) return ChannelTableau(0, 0).canonical();

  std::vector<std::size_t> ids;
  for (const auto& [id, t] : work.vertices_) ids.push_back(id);

  std::optional<std::size_t> acc;
  switch (s.kind) {
    case ContractionStrategy::Kind::Sequential: {
      // Vertex ids are assigned in statement order, which is topological.
      acc = ids.front();
      for (std::size_t i = 1; i < ids.size(); ++i) {
        acc = work.contract_pair(*acc, ids[i]);
        if (!acc) return std::nullopt;
      }
      break;
    }
    case ContractionStrategy::Kind::ChannelAccumulate: {
      // Builds the circuit channel backwards from the output side.
      acc = ids.back();
      for (std::size_t i = ids.size() - 1; i-- > 0;) {
        acc = work.contract_pair(ids[i], *acc);
        if (!acc) return std::nullopt;
      }
      break;
    }
    case ContractionStrategy::Kind::GreedyMinWidth: {
      while (!work.edges_.empty()) {
        // Candidate vertex pairs, keyed by the smallest member edge id.
        struct Cand {
          std::size_t width;
          std::size_t min_edge;
          std::size_t s, d;
        };
        std::optional<Cand> best;
        std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
        for (const auto& [id, e] : work.edges_) {
          if (!seen_pairs.insert({e.src_vertex, e.dst_vertex}).second) continue;
          std::size_t m = 0;
          std::size_t min_edge = std::numeric_limits<std::size_t>::max();
          for (const auto& [id2, e2] : work.edges_)
            if (e2.src_vertex == e.src_vertex && e2.dst_vertex == e.dst_vertex) {
              ++m;
              min_edge = std::min(min_edge, id2);
            }
          // Skip contractions that would close a cycle.
          Diagram probe = work;
          std::vector<std::size_t> direct;
          for (const auto& [id2, e2] : probe.edges_)
            if (e2.src_vertex == e.src_vertex && e2.dst_vertex == e.dst_vertex)
              direct.push_back(id2);
          for (auto id2 : direct) probe.edges_.erase(id2);
          if (probe.has_path(e.src_vertex, e.dst_vertex)) continue;
          const ChannelTableau& ts = work.vertices_.at(e.src_vertex);
          const ChannelTableau& td = work.vertices_.at(e.dst_vertex);
          const std::size_t width =
              ts.n_in() + (td.n_in() - m) + (ts.n_out() - m) + td.n_out();
          if (!best || width < best->width ||
              (width == best->width && min_edge < best->min_edge))
            best = Cand{width, min_edge, e.src_vertex, e.dst_vertex};
        }
        if (!best) throw std::logic_error("greedy contraction: no contractible edge");
        auto nv = work.contract_pair(best->s, best->d);
        if (!nv) return std::nullopt;
      }
      // Tensor the remaining disconnected vertices in id order.
      std::vector<std::size_t> rest;
      for (const auto& [id, t] : work.vertices_) rest.push_back(id);
      acc = rest.front();
      for (std::size_t i = 1; i < rest.size(); ++i) acc = work.contract_pair(*acc, rest[i]);
      break;
    }
    case ContractionStrategy::Kind::Explicit: {
      for (auto id : s.order) {
        auto nv = work.contract_edge(id);
        if (!nv) return std::nullopt;
      }
      std::vector<std::size_t> rest;
      for (const auto& [id, t] : work.vertices_) rest.push_back(id);
      acc = rest.front();
      for (std::size_t i = 1; i < rest.size(); ++i) acc = work.contract_pair(*acc, rest[i]);
      break;
    }
  }
  if (!acc) return std::nullopt;
  return work.finalize(work.vertices_.at(*acc), *acc);
}

bool Diagram::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::map<std::size_t, std::vector<int>> in_use, out_use;
  for (const auto& [id, t] : vertices_) {
    in_use[id].assign(t.n_in(), 0);
    out_use[id].assign(t.n_out(), 0);
  }
  auto tally = [&](std::map<std::size_t, std::vector<int>>& use, std::size_t v,
                   std::size_t p) {
    auto it = use.find(v);
    if (it == use.end() || p >= it->second.size()) return false;
    ++it->second[p];
    return true;
  };
  for (const auto& [id, e] : edges_) {
    if (!tally(out_use, e.src_vertex, e.src_port)) return fail("edge with bad source");
    if (!tally(in_use, e.dst_vertex, e.dst_port)) return fail("edge with bad destination");
  }
  for (const auto& w : inputs_)
    if (!tally(in_use, w.vertex, w.port)) return fail("bad boundary input");
  for (const auto& w : outputs_)
    if (!tally(out_use, w.vertex, w.port)) return fail("bad boundary output");
  for (const auto& [id, use] : in_use)
    for (auto n : use)
      if (n != 1) return fail("input port without exactly one producer");
  for (const auto& [id, use] : out_use)
    for (auto n : use)
      if (n != 1) return fail("output port without exactly one consumer");
  // Acyclicity.
  for (const auto& [id, t] : vertices_) {
    for (const auto& [eid, e] : edges_)
      if (e.src_vertex == id && has_path(e.dst_vertex, id)) return fail("cycle detected");
  }
  return true;
}

std::string Diagram::dump() const {
  std::ostringstream os;
  for (const auto& [id, t] : vertices_)
    os << "vertex " << id << ": " << t.n_in() << " -> " << t.n_out() << ", "
       << t.n_rows() << " rows\n";
  for (const auto& [id, e] : edges_)
    os << "edge " << id << ": " << e.src_vertex << "." << e.src_port << " -> "
       << e.dst_vertex << "." << e.dst_port << "\n";
  for (const auto& w : inputs_) os << "input " << w.vertex << "." << w.port << "\n";
  for (const auto& w : outputs_) os << "output " << w.vertex << "." << w.port << "\n";
  return os.str();
}

}  // namespace stab
