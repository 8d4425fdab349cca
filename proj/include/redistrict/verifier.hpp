#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "redistrict/core.hpp"

namespace redistrict {

enum class Verdict {
  NoEnvy,
  Envy,
  // The envied group holds fewer seats than the envious group has members,
  // so no total allocation can fit inside those seats.
  NotApplicable,
};

std::string_view to_string(Verdict v);

struct PairReport {
  Group envious;
  Group envied;
  Verdict verdict = Verdict::NoEnvy;
  std::int64_t current_utility = 0;
  // Set only for Verdict::Envy.
  std::optional<Allocation> witness;
  std::int64_t witness_utility = 0;
};

struct EnvyReport {
  int deviation = 0;
  bool deviation_ok = false;
  // (1 -> 2) then (2 -> 1).
  std::array<PairReport, 2> pairs;
  bool is_1ref = false;
};

// Checks whether `candidate` justifies envy of `envious` towards the other
// group under x: bounded deviation, strict utility gain, and seats of the
// envious group fitting inside the other group's seats at every school.
bool is_envy_witness(const Instance& inst, const Allocation& x, const Allocation& candidate, Group envious);

// Flow-based certification: for each ordered pair, maximizes the envious
// group's utility over all allocations that satisfy the deviation and
// seat-subset conditions and compares against the current utility.
EnvyReport check_1ref(const Instance& inst, const Allocation& x);

// Product of accessible-list sizes above which enumeration is refused.
inline constexpr std::int64_t kBruteForceLimit = 10'000'000;

// Same report by exhaustive enumeration of every allocation. Throws
// Error{TooLarge} past kBruteForceLimit.
EnvyReport brute_force_check(const Instance& inst, const Allocation& x);

// Every 1-relaxed envy-free allocation, in enumeration order (student 0 is
// the most significant digit, schools ascending).
std::vector<Allocation> brute_force_solve(const Instance& inst);

// Number of allocations of inst, saturating just above kBruteForceLimit.
std::int64_t allocation_space_size(const Instance& inst);

}  // namespace redistrict
