#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "redistrict/core.hpp"

namespace redistrict {

// Directed graph on schools with one edge (current(j), target(j)) per
// group-1 student j. Out-degree minus in-degree at school k equals the
// group imbalance delta(k) whenever target is perfectly swapped with respect
// to an allocation that agrees with `current` on group 2.
class SwapGraph {
 public:
  struct Edge {
    StudentId student;
    SchoolId from;
    SchoolId to;
  };

  SwapGraph(const Instance& inst, const Allocation& current, const Allocation& target);

  int num_schools() const { return static_cast<int>(delta_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  int delta(SchoolId k) const { return delta_[k]; }
  const std::vector<SchoolId>& excess() const { return excess_; }
  const std::vector<SchoolId>& deficient() const { return deficient_; }
  int out_degree(SchoolId k) const { return out_degree_[k]; }
  int in_degree(SchoolId k) const { return in_degree_[k]; }

  // Sum of |delta(k)| over all schools.
  std::int64_t potential() const;

  // Shortest path (as edge indices) from `start` to the first deficient
  // school found by BFS, expanding neighbours in ascending school id and
  // preferring the lowest student id among parallel edges. Self-loops are
  // never traversed.
  std::optional<std::vector<int>> path_to_deficient(SchoolId start) const;

 private:
  std::vector<Edge> edges_;
  std::vector<int> delta_;
  std::vector<int> out_degree_;
  std::vector<int> in_degree_;
  std::vector<SchoolId> excess_;
  std::vector<SchoolId> deficient_;
  // Per school: non-loop edge indices sorted by (to, student).
  std::vector<std::vector<int>> out_edges_;
};

enum class SolvePath { UnequalSizes, InitialIsEF, BalancedIsEF, Adjusted };

std::string_view to_string(SolvePath path);
std::optional<SolvePath> solve_path_from_string(std::string_view name);

struct AdjustTrace {
  int iterations = 0;
  // Imbalance potential before the first iteration and after each one.
  std::vector<std::int64_t> potential;
  // Students moved in each iteration, in path order.
  std::vector<std::vector<StudentId>> moved;
};

struct SolveResult {
  Allocation allocation;
  SolvePath path;
  // Populated once the equal-size pipeline reaches the respective stage.
  std::optional<Allocation> initial_swapped;
  std::optional<Allocation> balanced;
  std::optional<Allocation> balanced_swapped;
  std::optional<AdjustTrace> adjust_trace;
};

// Amount-preserving allocation maximizing u(group, .), via a min-cost
// b-matching circulation.
Allocation max_utility_amount_preserving(const Instance& inst, Group group);

// Allocation whose group-1 counts equal base's group-2 counts and vice versa
// at every school, or nullopt. Requires |N1| = |N2| (Error{SizeMismatch}).
std::optional<Allocation> find_perfectly_swapped(const Instance& inst, const Allocation& base);

// Amount-preserving allocation with |delta(k)| <= 1 at every school, each
// student placed at b(j) or b_swapped(j).
Allocation balanced_allocation(const Instance& inst, const Allocation& b, const Allocation& b_swapped);

// Moves group-1 students along swap-graph paths until no school has a group
// imbalance. Throws Error{PreconditionViolated} on bad inputs and
// Error{NoPath} if an excess school cannot reach a deficient one.
Allocation adjust(const Instance& inst, const Allocation& a, const Allocation& a_swapped,
                  AdjustTrace* trace = nullptr);

// 1-relaxed envy-free allocation for any two-group instance.
SolveResult solve(const Instance& inst);

}  // namespace redistrict
