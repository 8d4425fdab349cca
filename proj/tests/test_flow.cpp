#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "redistrict/error.hpp"
#include "redistrict/flow.hpp"

using namespace redistrict;
using namespace redistrict::flow;
using namespace redistrict::testing;

namespace {

FlowNetwork random_network(std::mt19937_64& rng, int max_bound, int max_cost, bool zero_lower) {
  const int nodes = 2 + static_cast<int>(rng() % 3);
  const int edges = 1 + static_cast<int>(rng() % 6);
  FlowNetwork net(nodes);
  for (int e = 0; e < edges; ++e) {
    const int from = static_cast<int>(rng() % nodes);
    const int to = static_cast<int>(rng() % nodes);
    std::int64_t a = static_cast<std::int64_t>(rng() % (max_bound + 1));
    std::int64_t b = static_cast<std::int64_t>(rng() % (max_bound + 1));
    if (a > b) std::swap(a, b);
    if (zero_lower) a = 0;
    const std::int64_t cost = static_cast<std::int64_t>(rng() % (2 * max_cost + 1)) - max_cost;
    net.add_edge(from, to, a, b, cost);
  }
  return net;
}

}  // namespace

TEST_CASE("max_flow small examples") {
  FlowNetwork single(2);
  single.add_edge(0, 1, 0, 7);
  CHECK(max_flow(single, 0, 1).value == 7);

  // s=0, a=1, b=2, t=3
  FlowNetwork diamond(4);
  diamond.add_edge(0, 1, 0, 2);
  diamond.add_edge(0, 2, 0, 2);
  diamond.add_edge(1, 3, 0, 1);
  diamond.add_edge(2, 3, 0, 3);
  const std::int64_t expected = brute_max_flow(diamond, 0, 3);
  REQUIRE(expected == 3);
  const auto mf = max_flow(diamond, 0, 3);
  CHECK(mf.value == expected);
  CHECK(mf.flow[2] == 1);
  CHECK(mf.flow[3] == 2);

  FlowNetwork disconnected(3);
  disconnected.add_edge(0, 2, 0, 4);
  CHECK(max_flow(disconnected, 0, 1).value == 0);
}

TEST_CASE("max_flow preconditions") {
  FlowNetwork net(2);
  net.add_edge(0, 1, 1, 2);
  CHECK_THROWS_AS(max_flow(net, 0, 1), Error);
  CHECK_THROWS_AS(max_flow(FlowNetwork(2), 0, 0), Error);
  CHECK_THROWS_AS(net.add_edge(0, 1, 3, 2), Error);
  CHECK_THROWS_AS(net.add_edge(0, 5, 0, 2), Error);

  FlowNetwork huge(2);
  huge.add_edge(0, 1, 0, std::numeric_limits<std::int64_t>::max() / 2);
  CHECK_THROWS_AS(max_flow(huge, 0, 1), Error);
  FlowNetwork pricey(2);
  pricey.add_edge(0, 1, 0, 1'000'000'000'000, 1'000'000'000);
  CHECK_THROWS_AS(min_cost_circulation(pricey), Error);
}

TEST_CASE("feasible_circulation examples") {
  FlowNetwork free(3);
  free.add_edge(0, 1, 0, 5);
  free.add_edge(1, 2, 0, 2);
  const auto zero = feasible_circulation(free);
  REQUIRE(zero);
  CHECK(is_circulation(free, *zero));

  FlowNetwork two_cycle(2);
  two_cycle.add_edge(0, 1, 2, 3);
  two_cycle.add_edge(1, 0, 1, 2);
  REQUIRE(brute_min_cost_circulation(two_cycle).has_value());
  const auto c = feasible_circulation(two_cycle);
  REQUIRE(c);
  CHECK(c->flow == std::vector<std::int64_t>{2, 2});

  FlowNetwork blocked(2);
  blocked.add_edge(0, 1, 3, 3);
  blocked.add_edge(1, 0, 1, 2);
  REQUIRE_FALSE(brute_min_cost_circulation(blocked).has_value());
  CHECK_FALSE(feasible_circulation(blocked));
  CHECK_FALSE(min_cost_circulation(blocked));
}

TEST_CASE("min_cost_circulation examples") {
  FlowNetwork zero_cost(2);
  zero_cost.add_edge(0, 1, 1, 2);
  zero_cost.add_edge(1, 0, 0, 4);
  const auto z = min_cost_circulation(zero_cost);
  REQUIRE(z);
  CHECK(z->cost == 0);
  CHECK(is_circulation(zero_cost, z->circulation));

  FlowNetwork profit(2);
  profit.add_edge(0, 1, 0, 1, -5);
  profit.add_edge(1, 0, 0, 1, 0);
  REQUIRE(brute_min_cost_circulation(profit) == -5);
  const auto p = min_cost_circulation(profit);
  REQUIRE(p);
  CHECK(p->cost == -5);
  CHECK(p->circulation.flow == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("parallel edges and self-loops carry independent flow") {
  FlowNetwork net(2);
  net.add_edge(0, 1, 0, 1, -2);
  net.add_edge(0, 1, 0, 1, -3);
  net.add_edge(1, 0, 0, 1, 0);
  net.add_edge(1, 1, 1, 2, -1);
  const auto best = min_cost_circulation(net);
  REQUIRE(best);
  CHECK(best->cost == -5);
  CHECK(best->circulation.flow == std::vector<std::int64_t>{0, 1, 1, 2});
  const auto feasible = feasible_circulation(net);
  REQUIRE(feasible);
  CHECK(is_circulation(net, *feasible));
}

TEST_CASE("flow kernels agree with enumeration on random small networks") {
  std::mt19937_64 rng(20240601);
  for (int round = 0; round < 3000; ++round) {
    const auto net = random_network(rng, 3, 5, round % 3 == 0);
    const auto oracle = brute_min_cost_circulation(net);

    const auto feasible = feasible_circulation(net);
    CHECK(feasible.has_value() == oracle.has_value());
    if (feasible) CHECK(is_circulation(net, *feasible));

    const auto best = min_cost_circulation(net);
    CHECK(best.has_value() == oracle.has_value());
    if (best && oracle) {
      CHECK(best->cost == *oracle);
      CHECK(is_circulation(net, best->circulation));
      CHECK(circulation_cost(net, best->circulation) == best->cost);
    }

    if (round % 3 == 0) {
      const auto mf = max_flow(net, 0, 1);
      CHECK(mf.value == brute_max_flow(net, 0, 1));
    }
  }
}
