#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "redistrict/core.hpp"
#include "redistrict/solver.hpp"
#include "redistrict/verifier.hpp"

namespace redistrict {

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

// Portable random source: the std::mt19937_64 engine (its output sequence is
// fixed by the C++ standard) with hand-written reductions, so a seed yields
// the same instance on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1) from the top 53 bits.
  double unit();

 private:
  std::mt19937_64 engine_;
};

struct GroupSplit {
  enum class Kind { Equal, Ratio, Exact };
  Kind kind = Kind::Equal;
  double ratio = 0.5;  // Ratio: each student is in group 1 with this probability
  int group1 = 0;      // Exact: size of group 1

  // "equal", "ratio:<p>", "exact:<n1>"
  static GroupSplit parse(std::string_view text);
  std::string to_string() const;
};

struct GenConfig {
  std::uint64_t seed = 0;
  int num_students = 10;
  int num_schools = 3;
  double extra_edge_prob = 0.3;
  std::int64_t max_value = 100;
  GroupSplit split;

  // Throws Error{PreconditionViolated}.
  void validate() const;
};

// Draw order: group labels, initial schools, extra accessibility edges
// (student-major, schools ascending), school values.
Instance generate_instance(const GenConfig& cfg);

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

std::string instance_to_json(const Instance& inst);
// Strict: unknown fields, missing fields and non-dense ids are rejected with
// Error{Parse}; the result is fully validated.
Instance instance_from_json(std::string_view text);

struct AllocationRecord {
  std::vector<SchoolId> assignment;
  std::optional<SolvePath> path_taken;
  std::optional<std::array<std::int64_t, 2>> utilities;
  std::optional<int> deviation;

  friend bool operator==(const AllocationRecord&, const AllocationRecord&) = default;
};

AllocationRecord make_record(const Instance& inst, const Allocation& alloc,
                             std::optional<SolvePath> path = std::nullopt);
std::string allocation_to_json(const AllocationRecord& record);
AllocationRecord allocation_record_from_json(std::string_view text);

std::string report_to_json(const Instance& inst, const EnvyReport& report);

void write_instance(const std::filesystem::path& path, const Instance& inst);
Instance read_instance(const std::filesystem::path& path);
void write_allocation(const std::filesystem::path& path, const AllocationRecord& record);
AllocationRecord read_allocation_record(const std::filesystem::path& path);
// Reads the record and validates the assignment against inst.
Allocation read_allocation(const std::filesystem::path& path, const Instance& inst);

// ---------------------------------------------------------------------------
// Batch runs
// ---------------------------------------------------------------------------

struct BenchConfig {
  std::uint64_t first_seed = 0;
  std::uint64_t last_seed = 0;  // inclusive
  GenConfig gen;                // seed is overridden per run
  int jobs = 1;
};

struct BenchSummary {
  std::int64_t runs = 0;
  std::array<std::int64_t, 4> path_counts{};  // indexed by SolvePath
  int max_adjust_iterations = 0;
  int iteration_bound = 0;  // floor(m / 2)
  std::int64_t certified = 0;
  std::vector<std::string> failures;  // first few, "seed N: message"

  bool all_passed() const {
    return failures.empty() && certified == runs && max_adjust_iterations <= iteration_bound;
  }
};

BenchSummary run_bench(const BenchConfig& cfg);
std::string format_bench(const BenchSummary& summary);

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

// 0 on success, 1 on a domain failure (envy found, bench failures), 2 on
// usage or IO errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace redistrict
