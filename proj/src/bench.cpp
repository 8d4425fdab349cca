#include <algorithm>
#include <atomic>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "redistrict/harness.hpp"

namespace redistrict {

namespace {

constexpr std::size_t kMaxReportedFailures = 10;

}  // namespace

BenchSummary run_bench(const BenchConfig& cfg) {
  if (cfg.last_seed < cfg.first_seed) throw Error(ErrorCode::PreconditionViolated, "empty seed range");
  cfg.gen.validate();

  BenchSummary total;
  total.iteration_bound = cfg.gen.num_schools / 2;
  std::mutex merge_mutex;
  std::atomic<std::uint64_t> next{cfg.first_seed};
  const int jobs = std::max(1, cfg.jobs);

  const auto worker = [&] {
    BenchSummary local;
    for (;;) {
      const std::uint64_t seed = next.fetch_add(1);
      if (seed > cfg.last_seed || seed < cfg.first_seed) break;
      ++local.runs;
      try {
        GenConfig gen = cfg.gen;
        gen.seed = seed;
        const auto inst = generate_instance(gen);
        const auto result = solve(inst);
        ++local.path_counts[static_cast<int>(result.path)];
        if (result.adjust_trace) {
          local.max_adjust_iterations = std::max(local.max_adjust_iterations, result.adjust_trace->iterations);
        }
        if (check_1ref(inst, result.allocation).is_1ref) {
          ++local.certified;
        } else {
          local.failures.push_back("seed " + std::to_string(seed) + ": output not certified");
        }
      } catch (const std::exception& e) {
        local.failures.push_back("seed " + std::to_string(seed) + ": " + e.what());
      }
    }
    std::lock_guard lock(merge_mutex);
    total.runs += local.runs;
    for (std::size_t i = 0; i < total.path_counts.size(); ++i) total.path_counts[i] += local.path_counts[i];
    total.max_adjust_iterations = std::max(total.max_adjust_iterations, local.max_adjust_iterations);
    total.certified += local.certified;
    for (auto& f : local.failures) {
      if (total.failures.size() < kMaxReportedFailures) total.failures.push_back(std::move(f));
    }
  };

  std::vector<std::jthread> threads;
  for (int i = 1; i < jobs; ++i) threads.emplace_back(worker);
  worker();
  threads.clear();
  return total;
}

std::string format_bench(const BenchSummary& s) {
  std::ostringstream os;
  os << std::left;
  os << std::setw(24) << "runs" << s.runs << '\n';
  for (auto p : {SolvePath::UnequalSizes, SolvePath::InitialIsEF, SolvePath::BalancedIsEF, SolvePath::Adjusted}) {
    os << std::setw(24) << ("path " + std::string(to_string(p))) << s.path_counts[static_cast<int>(p)] << '\n';
  }
  os << std::setw(24) << "adjust iterations max" << s.max_adjust_iterations << " (bound " << s.iteration_bound
     << ")\n";
  const double rate = s.runs == 0 ? 0.0 : 100.0 * static_cast<double>(s.certified) / static_cast<double>(s.runs);
  os << std::setw(24) << "verifier pass rate" << std::fixed << std::setprecision(2) << rate << "% (" << s.certified
     << "/" << s.runs << ")\n";
  for (const auto& f : s.failures) os << "failure: " << f << '\n';
  return os.str();
}

}  // namespace redistrict
