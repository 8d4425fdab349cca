#pragma once

#include "redistrict/core.hpp"

namespace redistrict::testing {

inline constexpr SchoolId kA = 0;
inline constexpr SchoolId kB = 1;

// Equal sizes, full accessibility: student 0 (group 1) at a, student 1 (group 2) at b.
inline InstanceDescription t1_description() {
  return {{1, 2}, {5, 3}, {{kA, kB}, {kA, kB}}, {kA, kB}};
}

// Unequal sizes: one group-1 student, two group-2 students; capacities [2, 1].
inline InstanceDescription t2_description() {
  return {{1, 2, 2}, {5, 3}, {{kA, kB}, {kA, kB}, {kA, kB}}, {kA, kA, kB}};
}

// Swap-blocked: each student can only reach their initial school.
inline InstanceDescription t3_description() {
  return {{1, 2}, {5, 3}, {{kA}, {kB}}, {kA, kB}};
}

inline Instance t1() { return Instance::validate(t1_description()); }
inline Instance t2() { return Instance::validate(t2_description()); }
inline Instance t3() { return Instance::validate(t3_description()); }

inline Allocation alloc(const Instance& inst, std::vector<SchoolId> assign) {
  return Allocation::from_assignment(inst, std::move(assign));
}

}  // namespace redistrict::testing
