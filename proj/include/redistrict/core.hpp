#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "redistrict/error.hpp"

namespace redistrict {

using StudentId = int;
using SchoolId = int;

// Schools values are capped so that n * max value, and every flow cost
// derived from it, stays exact in 64-bit arithmetic.
inline constexpr std::int64_t kMaxSchoolValue = 1'000'000;

enum class Group : std::uint8_t { One = 1, Two = 2 };

inline constexpr std::array<Group, 2> kGroups{Group::One, Group::Two};

constexpr int group_index(Group g) { return g == Group::One ? 0 : 1; }
constexpr int group_label(Group g) { return static_cast<int>(g); }
constexpr Group other(Group g) { return g == Group::One ? Group::Two : Group::One; }

// Unvalidated instance as read from an external format. Group labels are raw
// integers so that out-of-range labels can be reported.
struct InstanceDescription {
  std::vector<int> group_of;
  std::vector<std::int64_t> value_of;
  std::vector<std::vector<SchoolId>> accessible;
  std::vector<SchoolId> initial;
};

// A validated redistricting instance. Capacities are derived from the
// initial allocation and never stored independently.
class Instance {
 public:
  // Throws Error{InvalidGroupCount | InaccessibleInitial | InvalidInstance |
  // Overflow}.
  static Instance validate(InstanceDescription raw);

  int num_students() const { return static_cast<int>(group_of_.size()); }
  int num_schools() const { return static_cast<int>(value_of_.size()); }

  Group group_of(StudentId j) const { return group_of_[j]; }
  std::int64_t value_of(SchoolId k) const { return value_of_[k]; }
  std::span<const SchoolId> accessible(StudentId j) const { return accessible_[j]; }
  bool can_access(StudentId j, SchoolId k) const;
  SchoolId initial(StudentId j) const { return initial_[j]; }
  int capacity(SchoolId k) const { return capacity_[k]; }

  std::span<const std::int64_t> values() const { return value_of_; }
  std::span<const SchoolId> initial_assignment() const { return initial_; }
  std::span<const int> capacities() const { return capacity_; }

  int group_size(Group g) const { return group_size_[group_index(g)]; }

  InstanceDescription describe() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance() = default;

  std::vector<Group> group_of_;
  std::vector<std::int64_t> value_of_;
  std::vector<std::vector<SchoolId>> accessible_;  // sorted, no duplicates
  std::vector<SchoolId> initial_;
  std::vector<int> capacity_;
  std::array<int, 2> group_size_{};
};

// A total map student -> school together with per-school, per-group counts
// that are kept consistent with the map.
class Allocation {
 public:
  // Throws Error{InvalidAllocation} if the assignment has the wrong length or
  // uses an inaccessible school.
  static Allocation from_assignment(const Instance& inst, std::vector<SchoolId> assign);

  static Allocation initial(const Instance& inst);

  int num_students() const { return static_cast<int>(assign_.size()); }
  SchoolId operator[](StudentId j) const { return assign_[j]; }
  std::span<const SchoolId> assignment() const { return assign_; }

  int count(SchoolId k, Group g) const { return counts_[k][group_index(g)]; }
  int total(SchoolId k) const { return counts_[k][0] + counts_[k][1]; }
  // count(k, One) - count(k, Two)
  int delta(SchoolId k) const { return counts_[k][0] - counts_[k][1]; }

  // Reassigns student j; the school must be accessible to j.
  void move(const Instance& inst, StudentId j, SchoolId to);

  friend bool operator==(const Allocation& a, const Allocation& b) { return a.assign_ == b.assign_; }

 private:
  Allocation() = default;

  std::vector<SchoolId> assign_;
  std::vector<std::array<int, 2>> counts_;
};

// Sum of school values over the members of group g.
std::int64_t utility(const Instance& inst, const Allocation& alloc, Group g);

// max_k | |alloc^{-1}(k)| - c_k |
int deviation(const Instance& inst, const Allocation& alloc);

bool is_amount_preserving(const Instance& inst, const Allocation& alloc);

}  // namespace redistrict
