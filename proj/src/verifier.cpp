#include "redistrict/verifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>

#include "redistrict/flow.hpp"

namespace redistrict {

namespace {

using flow::EdgeId;
using flow::FlowNetwork;
using flow::NodeId;

PairReport make_pair(const Instance& inst, const Allocation& x, Group envious) {
  PairReport p;
  p.envious = envious;
  p.envied = other(envious);
  p.current_utility = utility(inst, x, envious);
  if (inst.group_size(envious) > 0 && inst.group_size(p.envied) < inst.group_size(envious)) {
    p.verdict = Verdict::NotApplicable;
  }
  return p;
}

bool pair_needs_search(const Instance& inst, const PairReport& p) {
  return p.verdict != Verdict::NotApplicable && inst.group_size(p.envious) > 0;
}

EnvyReport finish(int d, std::array<PairReport, 2> pairs) {
  EnvyReport r;
  r.deviation = d;
  r.deviation_ok = d <= 1;
  r.pairs = std::move(pairs);
  r.is_1ref = r.deviation_ok && std::none_of(r.pairs.begin(), r.pairs.end(),
                                             [](const PairReport& p) { return p.verdict == Verdict::Envy; });
  return r;
}

// Maximum utility of `p.envious` subject to the envy conditions other than
// strict gain; records an Envy verdict if it beats the current utility.
void optimize_pair(const Instance& inst, const Allocation& x, int d, PairReport& p) {
  const int n = inst.num_students();
  const int m = inst.num_schools();
  const std::int64_t slack = static_cast<std::int64_t>(n) * d;

  FlowNetwork net(2);
  const NodeId source = 0;
  const NodeId sink = 1;
  const NodeId first_student = net.add_nodes(n);
  const NodeId first_pair = net.add_nodes(2 * m);
  const NodeId first_school = net.add_nodes(m);
  const auto pair_node = [&](SchoolId k, Group g) { return first_pair + 2 * k + group_index(g); };

  std::vector<std::vector<std::pair<EdgeId, SchoolId>>> choices(n);
  for (StudentId j = 0; j < n; ++j) {
    net.add_edge(source, first_student + j, 1, 1);
    for (SchoolId k : inst.accessible(j)) {
      choices[j].emplace_back(net.add_edge(first_student + j, pair_node(k, inst.group_of(j)), 0, 1), k);
    }
  }
  for (SchoolId k = 0; k < m; ++k) {
    net.add_edge(pair_node(k, p.envious), first_school + k, 0, x.count(k, p.envied), -inst.value_of(k));
    net.add_edge(pair_node(k, p.envied), first_school + k, 0, n);
    const std::int64_t c = inst.capacity(k);
    net.add_edge(first_school + k, sink, std::max<std::int64_t>(0, c - slack), std::min<std::int64_t>(n, c + slack));
  }
  net.add_edge(sink, source, n, n);

  const auto best = flow::min_cost_circulation(net);
  if (!best) return;  // no allocation satisfies the constraints at all
  const std::int64_t best_utility = -best->cost;
  if (best_utility <= p.current_utility) return;

  std::vector<SchoolId> assign(n, -1);
  for (StudentId j = 0; j < n; ++j) {
    for (const auto& [e, k] : choices[j]) {
      if (best->circulation.flow[e] == 1) assign[j] = k;
    }
  }
  auto witness = Allocation::from_assignment(inst, std::move(assign));
  if (utility(inst, witness, p.envious) != best_utility || !is_envy_witness(inst, x, witness, p.envious)) {
    throw Error(ErrorCode::Internal, "decoded envy witness fails the direct re-check");
  }
  p.verdict = Verdict::Envy;
  p.witness = std::move(witness);
  p.witness_utility = best_utility;
}

// Enumerates all allocations, calling visit(assign, totals, counts) with
// the per-school totals and per-(school, group) counts maintained
// incrementally. counts is laid out as [2 * k + group_index].
void for_each_allocation(const Instance& inst,
                         const std::function<void(const std::vector<SchoolId>&, const std::vector<int>&)>& visit) {
  const int n = inst.num_students();
  const int m = inst.num_schools();
  std::vector<int> digit(n, 0);
  std::vector<SchoolId> assign(n);
  std::vector<int> counts(2 * m, 0);
  for (StudentId j = 0; j < n; ++j) {
    assign[j] = inst.accessible(j)[0];
    ++counts[2 * assign[j] + group_index(inst.group_of(j))];
  }
  for (;;) {
    visit(assign, counts);
    // Student n-1 is the least significant digit.
    int j = n - 1;
    while (j >= 0) {
      const auto acc = inst.accessible(j);
      const int gi = group_index(inst.group_of(j));
      --counts[2 * assign[j] + gi];
      digit[j] = (digit[j] + 1) % static_cast<int>(acc.size());
      assign[j] = acc[digit[j]];
      ++counts[2 * assign[j] + gi];
      if (digit[j] != 0) break;
      --j;
    }
    if (j < 0) return;
  }
}

struct Enumerated {
  std::vector<SchoolId> assign;
  int deviation;
  std::array<std::int64_t, 2> utility;
  std::vector<int> counts;
};

Enumerated summarize(const Instance& inst, const std::vector<SchoolId>& assign, const std::vector<int>& counts) {
  Enumerated e{assign, 0, {0, 0}, counts};
  for (SchoolId k = 0; k < inst.num_schools(); ++k) {
    const int total = counts[2 * k] + counts[2 * k + 1];
    e.deviation = std::max(e.deviation, std::abs(total - inst.capacity(k)));
    e.utility[0] += counts[2 * k] * inst.value_of(k);
    e.utility[1] += counts[2 * k + 1] * inst.value_of(k);
  }
  return e;
}

// Scans candidates for the best justified alternative of each ordered pair,
// keeping the first maximizer in enumeration order.
class EnumerationJudge {
 public:
  EnumerationJudge(const Instance& inst, const Enumerated& x)
      : inst_(inst), x_(x), bound_(static_cast<std::int64_t>(inst.num_students()) * x.deviation) {}

  void offer(const std::vector<SchoolId>& assign, const std::vector<int>& counts) {
    int dev = 0;
    std::array<std::int64_t, 2> u{0, 0};
    for (SchoolId k = 0; k < inst_.num_schools(); ++k) {
      dev = std::max(dev, std::abs(counts[2 * k] + counts[2 * k + 1] - inst_.capacity(k)));
      u[0] += counts[2 * k] * inst_.value_of(k);
      u[1] += counts[2 * k + 1] * inst_.value_of(k);
    }
    if (dev > bound_) return;
    for (int pi = 0; pi < 2; ++pi) {
      const int envious = pi;
      const int envied = 1 - pi;
      bool fits = true;
      for (SchoolId k = 0; k < inst_.num_schools() && fits; ++k) {
        fits = counts[2 * k + envious] <= x_.counts[2 * k + envied];
      }
      if (!fits) continue;
      if (!best_[pi] || u[envious] > best_[pi]->utility[envious]) best_[pi] = Enumerated{assign, dev, u, counts};
    }
  }

  EnvyReport report(const Allocation& x) const {
    std::array<PairReport, 2> pairs{make_pair(inst_, x, Group::One), make_pair(inst_, x, Group::Two)};
    for (int pi = 0; pi < 2; ++pi) {
      auto& p = pairs[pi];
      const bool found = best_[pi] && best_[pi]->utility[pi] > x_.utility[pi];
      if (p.verdict == Verdict::NotApplicable) {
        if (best_[pi]) throw Error(ErrorCode::Internal, "enumeration found a seat-subset allocation for a vacuous pair");
        continue;
      }
      if (!pair_needs_search(inst_, p) || !found) continue;
      p.verdict = Verdict::Envy;
      p.witness = Allocation::from_assignment(inst_, best_[pi]->assign);
      p.witness_utility = best_[pi]->utility[pi];
    }
    return finish(x_.deviation, std::move(pairs));
  }

 private:
  const Instance& inst_;
  const Enumerated& x_;
  std::int64_t bound_;
  std::array<std::optional<Enumerated>, 2> best_;
};

Enumerated summarize(const Instance& inst, const Allocation& x) {
  std::vector<int> counts(2 * inst.num_schools());
  for (SchoolId k = 0; k < inst.num_schools(); ++k) {
    counts[2 * k] = x.count(k, Group::One);
    counts[2 * k + 1] = x.count(k, Group::Two);
  }
  const auto a = x.assignment();
  return summarize(inst, std::vector<SchoolId>(a.begin(), a.end()), counts);
}

void require_enumerable(const Instance& inst) {
  if (allocation_space_size(inst) > kBruteForceLimit) {
    throw Error(ErrorCode::TooLarge, "allocation space exceeds " + std::to_string(kBruteForceLimit));
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NoEnvy: return "NoEnvy";
    case Verdict::Envy: return "Envy";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

bool is_envy_witness(const Instance& inst, const Allocation& x, const Allocation& candidate, Group envious) {
  const std::int64_t bound = static_cast<std::int64_t>(inst.num_students()) * deviation(inst, x);
  if (deviation(inst, candidate) > bound) return false;
  if (utility(inst, candidate, envious) <= utility(inst, x, envious)) return false;
  for (SchoolId k = 0; k < inst.num_schools(); ++k) {
    if (candidate.count(k, envious) > x.count(k, other(envious))) return false;
  }
  return true;
}

EnvyReport check_1ref(const Instance& inst, const Allocation& x) {
  const int d = deviation(inst, x);
  std::array<PairReport, 2> pairs{make_pair(inst, x, Group::One), make_pair(inst, x, Group::Two)};
  for (auto& p : pairs) {
    if (pair_needs_search(inst, p)) optimize_pair(inst, x, d, p);
  }
  return finish(d, std::move(pairs));
}

std::int64_t allocation_space_size(const Instance& inst) {
  std::int64_t size = 1;
  for (StudentId j = 0; j < inst.num_students(); ++j) {
    size *= static_cast<std::int64_t>(inst.accessible(j).size());
    if (size > kBruteForceLimit) return kBruteForceLimit + 1;
  }
  return size;
}

EnvyReport brute_force_check(const Instance& inst, const Allocation& x) {
  require_enumerable(inst);
  const auto xs = summarize(inst, x);
  EnumerationJudge judge(inst, xs);
  for_each_allocation(inst, [&](const std::vector<SchoolId>& assign, const std::vector<int>& counts) {
    judge.offer(assign, counts);
  });
  return judge.report(x);
}

std::vector<Allocation> brute_force_solve(const Instance& inst) {
  require_enumerable(inst);
  std::vector<Enumerated> all;
  for_each_allocation(inst, [&](const std::vector<SchoolId>& assign, const std::vector<int>& counts) {
    all.push_back(summarize(inst, assign, counts));
  });
  std::vector<Allocation> result;
  for (const auto& xs : all) {
    if (xs.deviation > 1) continue;
    EnumerationJudge judge(inst, xs);
    for (const auto& c : all) judge.offer(c.assign, c.counts);
    const auto x = Allocation::from_assignment(inst, xs.assign);
    if (judge.report(x).is_1ref) result.push_back(x);
  }
  return result;
}

}  // namespace redistrict
