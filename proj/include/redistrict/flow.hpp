#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace redistrict::flow {

using NodeId = int;
using EdgeId = int;

struct FlowEdge {
  NodeId from;
  NodeId to;
  std::int64_t lower;
  std::int64_t upper;
  std::int64_t cost;
};

// Directed multigraph with integer lower/upper bounds and costs. Edges are
// addressed by insertion index; parallel edges and self-loops are allowed.
// The same network type serves max-flow (lower = 0), feasibility and
// min-cost queries.
class FlowNetwork {
 public:
  FlowNetwork() = default;
  explicit FlowNetwork(int num_nodes) : num_nodes_(num_nodes) {}

  NodeId add_node() { return num_nodes_++; }
  NodeId add_nodes(int count) {
    const NodeId first = num_nodes_;
    num_nodes_ += count;
    return first;
  }

  // Throws Error{PreconditionViolated} on unknown endpoints or lower > upper,
  // and Error{Overflow} on negative lower bounds.
  EdgeId add_edge(NodeId from, NodeId to, std::int64_t lower, std::int64_t upper, std::int64_t cost = 0);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const FlowEdge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<FlowEdge>& edges() const { return edges_; }

 private:
  int num_nodes_ = 0;
  std::vector<FlowEdge> edges_;
};

struct Circulation {
  std::vector<std::int64_t> flow;  // indexed by EdgeId

  friend bool operator==(const Circulation&, const Circulation&) = default;
};

struct MaxFlowResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> flow;
};

struct CostedCirculation {
  std::int64_t cost = 0;
  Circulation circulation;
};

// Maximum integral source-sink flow (Dinic). Requires every lower bound to be
// zero; costs are ignored.
MaxFlowResult max_flow(const FlowNetwork& net, NodeId source, NodeId sink);

// Integral circulation respecting all bounds, or nullopt if none exists.
// Lower bounds are eliminated with a super-source/super-sink and a single
// max-flow run.
std::optional<Circulation> feasible_circulation(const FlowNetwork& net);

// Integral circulation of minimum total cost, or nullopt if infeasible.
// Negative costs are allowed.
std::optional<CostedCirculation> min_cost_circulation(const FlowNetwork& net);

// Capacity and conservation check on every edge and node.
bool is_circulation(const FlowNetwork& net, const Circulation& c);

std::int64_t circulation_cost(const FlowNetwork& net, const Circulation& c);

}  // namespace redistrict::flow
