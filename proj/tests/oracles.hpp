#pragma once

// Exhaustive reference computations used to check the flow- and
// graph-based implementations. Nothing here calls into the solver or the
// flow kernels.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "redistrict/core.hpp"
#include "redistrict/flow.hpp"

namespace redistrict::testing {

// Calls visit(flow) for every integral edge assignment within [lower, upper].
inline void for_each_edge_flow(const flow::FlowNetwork& net,
                               const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  const int e_count = net.num_edges();
  std::vector<std::int64_t> f(e_count);
  for (int e = 0; e < e_count; ++e) f[e] = net.edge(e).lower;
  for (;;) {
    visit(f);
    int e = 0;
    while (e < e_count) {
      if (f[e] < net.edge(e).upper) {
        ++f[e];
        break;
      }
      f[e] = net.edge(e).lower;
      ++e;
    }
    if (e == e_count) return;
  }
}

inline std::vector<std::int64_t> node_balance(const flow::FlowNetwork& net, const std::vector<std::int64_t>& f) {
  std::vector<std::int64_t> bal(net.num_nodes(), 0);
  for (int e = 0; e < net.num_edges(); ++e) {
    bal[net.edge(e).from] -= f[e];
    bal[net.edge(e).to] += f[e];
  }
  return bal;
}

inline std::int64_t brute_max_flow(const flow::FlowNetwork& net, int s, int t) {
  std::int64_t best = 0;
  for_each_edge_flow(net, [&](const std::vector<std::int64_t>& f) {
    const auto bal = node_balance(net, f);
    for (int v = 0; v < net.num_nodes(); ++v) {
      if (v != s && v != t && bal[v] != 0) return;
    }
    best = std::max(best, -bal[s]);
  });
  return best;
}

// Minimum circulation cost, or nullopt if no circulation exists.
inline std::optional<std::int64_t> brute_min_cost_circulation(const flow::FlowNetwork& net) {
  std::optional<std::int64_t> best;
  for_each_edge_flow(net, [&](const std::vector<std::int64_t>& f) {
    const auto bal = node_balance(net, f);
    if (std::any_of(bal.begin(), bal.end(), [](std::int64_t b) { return b != 0; })) return;
    std::int64_t cost = 0;
    for (int e = 0; e < net.num_edges(); ++e) cost += f[e] * net.edge(e).cost;
    if (!best || cost < *best) best = cost;
  });
  return best;
}

// All allocations of inst in lexicographic order.
inline std::vector<std::vector<SchoolId>> all_assignments(const Instance& inst) {
  std::vector<std::vector<SchoolId>> out{{}};
  for (StudentId j = 0; j < inst.num_students(); ++j) {
    std::vector<std::vector<SchoolId>> next;
    for (const auto& prefix : out) {
      for (SchoolId k : inst.accessible(j)) {
        auto a = prefix;
        a.push_back(k);
        next.push_back(std::move(a));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::array<int, 2>> group_counts(const Instance& inst, const std::vector<SchoolId>& a) {
  std::vector<std::array<int, 2>> c(inst.num_schools(), {0, 0});
  for (StudentId j = 0; j < inst.num_students(); ++j) ++c[a[j]][group_index(inst.group_of(j))];
  return c;
}

inline std::int64_t group_utility(const Instance& inst, const std::vector<SchoolId>& a, Group g) {
  std::int64_t u = 0;
  for (StudentId j = 0; j < inst.num_students(); ++j) {
    if (inst.group_of(j) == g) u += inst.value_of(a[j]);
  }
  return u;
}

inline bool preserves_amounts(const Instance& inst, const std::vector<SchoolId>& a) {
  const auto c = group_counts(inst, a);
  for (SchoolId k = 0; k < inst.num_schools(); ++k) {
    if (c[k][0] + c[k][1] != inst.capacity(k)) return false;
  }
  return true;
}

inline std::int64_t brute_max_amount_preserving_utility(const Instance& inst, Group g) {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (const auto& a : all_assignments(inst)) {
    if (preserves_amounts(inst, a)) best = std::max(best, group_utility(inst, a, g));
  }
  return best;
}

inline bool brute_has_perfect_swap(const Instance& inst, const std::vector<SchoolId>& base) {
  const auto want = group_counts(inst, base);
  for (const auto& a : all_assignments(inst)) {
    const auto c = group_counts(inst, a);
    bool ok = true;
    for (SchoolId k = 0; k < inst.num_schools() && ok; ++k) ok = c[k][0] == want[k][1] && c[k][1] == want[k][0];
    if (ok) return true;
  }
  return false;
}

}  // namespace redistrict::testing
