#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "redistrict/harness.hpp"

namespace redistrict {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::PreconditionViolated, "invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

// "A..B", inclusive.
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto s = parse_u64(text, "seed range");
    return {s, s};
  }
  return {parse_u64(text.substr(0, dots), "seed range"), parse_u64(text.substr(dots + 2), "seed range")};
}

struct GenOptions {
  int students = 10;
  int schools = 3;
  double edge_prob = 0.3;
  std::int64_t max_value = 100;
  std::string split = "equal";

  void attach(CLI::App& app) {
    app.add_option("--students", students, "Number of students")->capture_default_str();
    app.add_option("--schools", schools, "Number of schools")->capture_default_str();
    app.add_option("--edge-prob", edge_prob, "Probability of each extra accessible school")->capture_default_str();
    app.add_option("--max-value", max_value, "School values are drawn from [0, max-value]")->capture_default_str();
    app.add_option("--split", split, "equal | ratio:<p> | exact:<n1>")->capture_default_str();
  }

  GenConfig config(std::uint64_t seed) const {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.num_students = students;
    cfg.num_schools = schools;
    cfg.extra_edge_prob = edge_prob;
    cfg.max_value = max_value;
    cfg.split = GroupSplit::parse(split);
    cfg.validate();
    return cfg;
  }
};

int run_solve(const std::string& input, const std::string& output, std::ostream& out) {
  const auto inst = read_instance(input);
  const auto result = solve(inst);
  const auto record = make_record(inst, result.allocation, result.path);
  write_allocation(output, record);
  out << "path_taken " << to_string(result.path) << "\nutilities " << (*record.utilities)[0] << ' '
      << (*record.utilities)[1] << "\ndeviation " << *record.deviation << '\n';
  return kExitOk;
}

int run_verify(const std::string& input, const std::string& alloc_path, bool brute_force, std::ostream& out) {
  const auto inst = read_instance(input);
  const auto x = read_allocation(alloc_path, inst);
  const auto report = brute_force ? brute_force_check(inst, x) : check_1ref(inst, x);
  out << report_to_json(inst, report) << '\n';
  return report.is_1ref ? kExitOk : kExitDomain;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Envy-free school redistricting between two groups"};
  app.require_subcommand(1);

  std::string input, output, alloc_path;
  bool brute_force = false;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a 1-relaxed envy-free allocation");
  solve_cmd->add_option("-i,--input", input, "Instance file")->required();
  solve_cmd->add_option("-o,--output", output, "Allocation file to write")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Certify an allocation (exit 1 if it is not 1-relaxed envy-free)");
  verify_cmd->add_option("-i,--input", input, "Instance file")->required();
  verify_cmd->add_option("-a,--allocation", alloc_path, "Allocation file")->required();
  verify_cmd->add_flag("--brute-force", brute_force, "Enumerate every allocation instead of solving flows");

  std::uint64_t seed = 0;
  GenOptions gen_opts;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen_opts.attach(*gen_cmd);
  gen_cmd->add_option("-o,--output", output, "Instance file to write")->required();

  std::string seeds = "0..99";
  int jobs = 1;
  GenOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Solve and certify a range of random instances");
  bench_cmd->add_option("--seeds", seeds, "Inclusive seed range A..B")->capture_default_str();
  bench_opts.attach(*bench_cmd);
  bench_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(input, output, out);
    if (*verify_cmd) return run_verify(input, alloc_path, brute_force, out);
    if (*gen_cmd) {
      const auto inst = generate_instance(gen_opts.config(seed));
      write_instance(output, inst);
      return kExitOk;
    }
    if (*bench_cmd) {
      BenchConfig cfg;
      std::tie(cfg.first_seed, cfg.last_seed) = parse_seed_range(seeds);
      cfg.gen = bench_opts.config(0);
      cfg.jobs = jobs;
      const auto summary = run_bench(cfg);
      out << format_bench(summary);
      return summary.all_passed() ? kExitOk : kExitDomain;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool domain = e.code() == ErrorCode::Internal || e.code() == ErrorCode::NoPath;
    return domain ? kExitDomain : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace redistrict
