#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stab/circuit.hpp"
#include "stab/tableau.hpp"

namespace stab {

struct WireRef {
  std::size_t vertex = 0;
  std::size_t port = 0;
  bool operator==(const WireRef&) const = default;
};

struct DiagramEdge {
  std::size_t src_vertex = 0;
  std::size_t src_port = 0;
  std::size_t dst_vertex = 0;
  std::size_t dst_port = 0;
};

struct ContractionStrategy {
  enum class Kind { Sequential, ChannelAccumulate, GreedyMinWidth, Explicit };
  Kind kind = Kind::Sequential;
  std::vector<std::size_t> order;  // edge ids, Explicit only

  static ContractionStrategy sequential() { return {Kind::Sequential, {}}; }
  static ContractionStrategy channel_accumulate() { return {Kind::ChannelAccumulate, {}}; }
  static ContractionStrategy greedy_min_width() { return {Kind::GreedyMinWidth, {}}; }
  static ContractionStrategy explicit_order(std::vector<std::size_t> edges) {
    return {Kind::Explicit, std::move(edges)};
  }
};

/// Directed acyclic graph of channel tableaux; edges carry single qubit
/// wires from an output port of one vertex to an input port of another.
class Diagram {
 public:
  std::size_t add_vertex(ChannelTableau t);
  std::size_t add_edge(std::size_t src_vertex, std::size_t src_port,
                       std::size_t dst_vertex, std::size_t dst_port);

  const std::map<std::size_t, ChannelTableau>& vertices() const { return vertices_; }
  const std::map<std::size_t, DiagramEdge>& edges() const { return edges_; }
  std::vector<WireRef>& inputs() { return inputs_; }
  std::vector<WireRef>& outputs() { return outputs_; }
  const std::vector<WireRef>& inputs() const { return inputs_; }
  const std::vector<WireRef>& outputs() const { return outputs_; }

  static Diagram from_circuit(const Circuit& c);

  /// True if a directed path exists from a to b.
  bool has_path(std::size_t a, std::size_t b) const;

  /// Contracts all edges between the endpoints of edge `edge_id` at once
  /// (composition over the full shared subsystem). Returns the merged
  /// vertex id, or nullopt if the composition is infeasible. Throws if the
  /// contraction would create a cycle.
  std::optional<std::size_t> contract_edge(std::size_t edge_id);

  /// Rewriting rule 2: replace two path-disconnected vertices by their
  /// tensor product (v1 wires first).
  std::size_t merge_parallel(std::size_t v1, std::size_t v2);

  /// Fully contracts a copy of the diagram; the result's wires are ordered
  /// by the diagram boundary (inputs/outputs lists).
  std::optional<ChannelTableau> contract_all(const ContractionStrategy& s) const;

  /// Structural well-formedness: every port has exactly one consumer.
  bool validate(std::string* why = nullptr) const;

  std::string dump() const;

 private:
  // Composes d after s over all shared edges (tensor when none).
  std::optional<std::size_t> contract_pair(std::size_t s, std::size_t d);
  std::optional<ChannelTableau> finalize(std::optional<ChannelTableau> tableau,
                                         std::size_t vertex) const;

  std::map<std::size_t, ChannelTableau> vertices_;
  std::map<std::size_t, DiagramEdge> edges_;
  std::vector<WireRef> inputs_;
  std::vector<WireRef> outputs_;
  std::size_t next_vertex_ = 0;
  std::size_t next_edge_ = 0;
};

}  // namespace stab
