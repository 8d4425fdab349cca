#include "redistrict/flow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "redistrict/error.hpp"

namespace redistrict::flow {

namespace {

__extension__ using Wide = __int128;

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// Rejects networks whose total capacity or worst-case cost could leave
// int64. Capacity sums get an extra factor of two for the auxiliary
// super-source edges used by the reductions.
void check_overflow(const FlowNetwork& net) {
  Wide total_upper = 0;
  Wide max_cost = 0;
  for (const auto& e : net.edges()) {
    total_upper += e.upper;
    max_cost = std::max<Wide>(max_cost, e.cost < 0 ? -static_cast<Wide>(e.cost) : e.cost);
  }
  const Wide limit = std::numeric_limits<std::int64_t>::max() / 4;
  if (2 * total_upper > limit) {
    throw Error(ErrorCode::Overflow, "sum of edge capacities exceeds the 64-bit guard");
  }
  // Path lengths in the residual graph are bounded by (V + 1) * max|cost|.
  const Wide path_bound = static_cast<Wide>(net.num_nodes() + 2) * max_cost;
  if (total_upper * max_cost > limit || path_bound > limit) {
    throw Error(ErrorCode::Overflow, "capacity * cost exceeds the 64-bit guard");
  }
}

// Residual graph with paired arcs: arc i and i ^ 1 are mutual reverses.
struct Residual {
  struct Arc {
    int to;
    std::int64_t cap;
    std::int64_t cost;
  };

  explicit Residual(int n) : adj(n) {}

  int add_arc(int from, int to, std::int64_t cap, std::int64_t cost = 0) {
    const int id = static_cast<int>(arcs.size());
    arcs.push_back({to, cap, cost});
    arcs.push_back({from, 0, -cost});
    adj[from].push_back(id);
    adj[to].push_back(id + 1);
    return id;
  }

  void push(int arc, std::int64_t amount) {
    arcs[arc].cap -= amount;
    arcs[arc ^ 1].cap += amount;
  }

  // Flow currently on forward arc `arc`.
  std::int64_t pushed(int arc) const { return arcs[arc ^ 1].cap; }

  int size() const { return static_cast<int>(adj.size()); }

  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;
};

class Dinic {
 public:
  explicit Dinic(Residual& g) : g_(g), level_(g.size()), next_(g.size()) {}

  std::int64_t run(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (std::int64_t f = dfs(s, t, kInf)) total += f;
    }
    return total;
  }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int id : g_.adj[v]) {
        const auto& a = g_.arcs[id];
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int v, int t, std::int64_t limit) {
    if (v == t) return limit;
    for (auto& i = next_[v]; i < static_cast<int>(g_.adj[v].size()); ++i) {
      const int id = g_.adj[v][i];
      const auto& a = g_.arcs[id];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      if (std::int64_t f = dfs(a.to, t, std::min(limit, a.cap)); f > 0) {
        g_.push(id, f);
        return f;
      }
    }
    return 0;
  }

  Residual& g_;
  std::vector<int> level_;
  std::vector<int> next_;
};

// Successive shortest paths with Dijkstra on reduced costs. Every arc must
// start with non-negative cost so that zero potentials are feasible.
class SuccessiveShortestPaths {
 public:
  explicit SuccessiveShortestPaths(Residual& g)
      : g_(g), potential_(g.size(), 0), dist_(g.size()), via_(g.size()) {}

  // Returns (flow, cost) of a min-cost maximum s-t flow.
  std::pair<std::int64_t, std::int64_t> run(int s, int t) {
    std::int64_t flow = 0;
    std::int64_t cost = 0;
    while (dijkstra(s, t)) {
      for (int v = 0; v < g_.size(); ++v) {
        if (dist_[v] != kInf) potential_[v] += dist_[v];
      }
      std::int64_t amount = kInf;
      for (int v = t; v != s; v = g_.arcs[via_[v] ^ 1].to) {
        amount = std::min(amount, g_.arcs[via_[v]].cap);
      }
      for (int v = t; v != s; v = g_.arcs[via_[v] ^ 1].to) {
        g_.push(via_[v], amount);
        cost += amount * g_.arcs[via_[v]].cost;
      }
      flow += amount;
    }
    return {flow, cost};
  }

 private:
  bool dijkstra(int s, int t) {
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::fill(dist_.begin(), dist_.end(), kInf);
    dist_[s] = 0;
    heap.emplace(0, s);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d != dist_[v]) continue;
      for (int id : g_.adj[v]) {
        const auto& a = g_.arcs[id];
        if (a.cap <= 0) continue;
        const std::int64_t nd = d + a.cost + potential_[v] - potential_[a.to];
        if (nd < dist_[a.to]) {
          dist_[a.to] = nd;
          via_[a.to] = id;
          heap.emplace(nd, a.to);
        }
      }
    }
    return dist_[t] != kInf;
  }

  Residual& g_;
  std::vector<std::int64_t> potential_;
  std::vector<std::int64_t> dist_;
  std::vector<int> via_;
};

}  // namespace

EdgeId FlowNetwork::add_edge(NodeId from, NodeId to, std::int64_t lower, std::int64_t upper,
                             std::int64_t cost) {
  if (from < 0 || from >= num_nodes_ || to < 0 || to >= num_nodes_) {
    throw Error(ErrorCode::PreconditionViolated, "edge endpoint out of range");
  }
  if (lower < 0) throw Error(ErrorCode::PreconditionViolated, "negative lower bound");
  if (lower > upper) {
    throw Error(ErrorCode::PreconditionViolated,
                "lower bound " + std::to_string(lower) + " exceeds upper bound " + std::to_string(upper));
  }
  edges_.push_back({from, to, lower, upper, cost});
  return static_cast<EdgeId>(edges_.size() - 1);
}

MaxFlowResult max_flow(const FlowNetwork& net, NodeId source, NodeId sink) {
  if (source == sink) throw Error(ErrorCode::PreconditionViolated, "source equals sink");
  if (source < 0 || source >= net.num_nodes() || sink < 0 || sink >= net.num_nodes()) {
    throw Error(ErrorCode::PreconditionViolated, "source or sink out of range");
  }
  check_overflow(net);
  Residual g(net.num_nodes());
  std::vector<int> arc_of(net.num_edges(), -1);
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const auto& edge = net.edge(e);
    if (edge.lower != 0) throw Error(ErrorCode::PreconditionViolated, "max_flow requires zero lower bounds");
    if (edge.from != edge.to) arc_of[e] = g.add_arc(edge.from, edge.to, edge.upper);
  }
  MaxFlowResult result;
  result.value = Dinic(g).run(source, sink);
  result.flow.assign(net.num_edges(), 0);
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    if (arc_of[e] >= 0) result.flow[e] = g.pushed(arc_of[e]);
  }
  return result;
}

std::optional<Circulation> feasible_circulation(const FlowNetwork& net) {
  check_overflow(net);
  const int n = net.num_nodes();
  std::vector<std::int64_t> excess(n, 0);
  for (const auto& e : net.edges()) {
    excess[e.to] += e.lower;
    excess[e.from] -= e.lower;
  }

  FlowNetwork aux(n + 2);
  const NodeId super_source = n;
  const NodeId super_sink = n + 1;
  for (const auto& e : net.edges()) aux.add_edge(e.from, e.to, 0, e.upper - e.lower);
  std::int64_t demand = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      aux.add_edge(super_source, v, 0, excess[v]);
      demand += excess[v];
    } else if (excess[v] < 0) {
      aux.add_edge(v, super_sink, 0, -excess[v]);
    }
  }

  const auto mf = max_flow(aux, super_source, super_sink);
  if (mf.value != demand) return std::nullopt;

  Circulation c;
  c.flow.resize(net.num_edges());
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    // Self-loops never carry auxiliary flow; their lower bound is the flow.
    c.flow[e] = net.edge(e).lower + mf.flow[e];
  }
  return c;
}

std::optional<CostedCirculation> min_cost_circulation(const FlowNetwork& net) {
  check_overflow(net);
  const int n = net.num_nodes();
  const int super_source = n;
  const int super_sink = n + 1;
  Residual g(n + 2);

  // Start every edge at its cheapest extreme: lower bound for non-negative
  // cost, upper bound for negative cost. Residual arcs then all have
  // non-negative cost, and the remaining work is a min-cost flow that
  // repairs the resulting node imbalances.
  std::vector<std::int64_t> base(net.num_edges());
  std::vector<int> arc_of(net.num_edges(), -1);
  std::vector<std::int64_t> excess(n, 0);
  std::int64_t cost = 0;
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const auto& edge = net.edge(e);
    const bool negative = edge.cost < 0;
    base[e] = negative ? edge.upper : edge.lower;
    cost += base[e] * edge.cost;
    excess[edge.to] += base[e];
    excess[edge.from] -= base[e];
    if (edge.from == edge.to || edge.upper == edge.lower) continue;
    arc_of[e] = negative ? g.add_arc(edge.to, edge.from, edge.upper - edge.lower, -edge.cost)
                         : g.add_arc(edge.from, edge.to, edge.upper - edge.lower, edge.cost);
  }
  std::int64_t demand = 0;
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      g.add_arc(super_source, v, excess[v]);
      demand += excess[v];
    } else if (excess[v] < 0) {
      g.add_arc(v, super_sink, -excess[v]);
    }
  }

  const auto [pushed, extra_cost] = SuccessiveShortestPaths(g).run(super_source, super_sink);
  if (pushed != demand) return std::nullopt;

  CostedCirculation result;
  result.cost = cost + extra_cost;
  result.circulation.flow.resize(net.num_edges());
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const std::int64_t moved = arc_of[e] >= 0 ? g.pushed(arc_of[e]) : 0;
    result.circulation.flow[e] = net.edge(e).cost < 0 ? base[e] - moved : base[e] + moved;
  }
  return result;
}

bool is_circulation(const FlowNetwork& net, const Circulation& c) {
  if (static_cast<int>(c.flow.size()) != net.num_edges()) return false;
  std::vector<std::int64_t> balance(net.num_nodes(), 0);
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    const auto& edge = net.edge(e);
    if (c.flow[e] < edge.lower || c.flow[e] > edge.upper) return false;
    balance[edge.from] -= c.flow[e];
    balance[edge.to] += c.flow[e];
  }
  return std::all_of(balance.begin(), balance.end(), [](std::int64_t b) { return b == 0; });
}

std::int64_t circulation_cost(const FlowNetwork& net, const Circulation& c) {
  std::int64_t total = 0;
  for (EdgeId e = 0; e < net.num_edges(); ++e) total += net.edge(e).cost * c.flow[e];
  return total;
}

}  // namespace redistrict::flow
