#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "redistrict/harness.hpp"

using namespace redistrict;
using namespace redistrict::testing;

namespace {

struct TempDir {
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("redistrict_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::filesystem::path operator/(const std::string& name) const { return path / name; }

  std::filesystem::path path;
  static inline int counter = 0;
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "redistrict");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

ErrorCode parse_failure(const std::string& text) {
  try {
    (void)instance_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse unexpectedly succeeded");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("generator is deterministic per seed") {
  GenConfig cfg;
  cfg.seed = 42;
  cfg.num_students = 25;
  cfg.num_schools = 5;
  CHECK(instance_to_json(generate_instance(cfg)) == instance_to_json(generate_instance(cfg)));
  cfg.seed = 43;
  const auto other = generate_instance(cfg);
  cfg.seed = 42;
  CHECK_FALSE(other == generate_instance(cfg));
}

TEST_CASE("generator stream is pinned") {
  Rng rng(0);
  // First output of std::mt19937_64 with seed 0.
  CHECK(rng.next() == 2947667278772165694ULL);
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.below(7);
    CHECK(x < 7);
    CHECK(x == b.below(7));
    const double u = a.unit();
    CHECK(u == b.unit());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("edge probability extremes") {
  GenConfig cfg;
  cfg.num_students = 12;
  cfg.num_schools = 4;
  cfg.extra_edge_prob = 0.0;
  const auto forced = generate_instance(cfg);
  for (StudentId j = 0; j < forced.num_students(); ++j) {
    REQUIRE(forced.accessible(j).size() == 1);
    CHECK(forced.accessible(j)[0] == forced.initial(j));
  }
  CHECK(solve(forced).allocation == Allocation::initial(forced));

  cfg.extra_edge_prob = 1.0;
  const auto full = generate_instance(cfg);
  for (StudentId j = 0; j < full.num_students(); ++j) CHECK(full.accessible(j).size() == 4);
}

TEST_CASE("group splits") {
  GenConfig cfg;
  cfg.num_students = 9;
  cfg.split = GroupSplit::parse("exact:2");
  CHECK(generate_instance(cfg).group_size(Group::One) == 2);
  cfg.split = GroupSplit::parse("equal");
  CHECK(generate_instance(cfg).group_size(Group::One) == 4);
  cfg.split = GroupSplit::parse("ratio:1");
  CHECK(generate_instance(cfg).group_size(Group::One) == 9);
  CHECK(GroupSplit::parse("ratio:0.25").ratio == doctest::Approx(0.25));
  CHECK_THROWS_AS(GroupSplit::parse("ratio:"), Error);
  CHECK_THROWS_AS(GroupSplit::parse("exact:2x"), Error);
  CHECK_THROWS_AS(GroupSplit::parse("thirds"), Error);
  cfg.split = GroupSplit::parse("exact:10");
  CHECK_THROWS_AS(generate_instance(cfg), Error);
}

TEST_CASE("instance and allocation round trips") {
  for (const auto& inst : {t1(), t2(), t3()}) CHECK(instance_from_json(instance_to_json(inst)) == inst);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.num_students = 1 + static_cast<int>(seed % 30);
    cfg.num_schools = 1 + static_cast<int>(seed % 7);
    cfg.split = GroupSplit{GroupSplit::Kind::Ratio, 0.4, 0};
    const auto inst = generate_instance(cfg);
    CHECK(instance_from_json(instance_to_json(inst)) == inst);
    const auto result = solve(inst);
    const auto record = make_record(inst, result.allocation, result.path);
    CHECK(allocation_record_from_json(allocation_to_json(record)) == record);
  }
  const AllocationRecord bare{{0, 1}, std::nullopt, std::nullopt, std::nullopt};
  CHECK(allocation_record_from_json(allocation_to_json(bare)) == bare);
}

TEST_CASE("strict instance schema") {
  CHECK(parse_failure(R"({"schools": [], "students": [], "extra": 1})") == ErrorCode::Parse);
  CHECK(parse_failure(R"({"schools": [{"id": 0, "value": 1, "name": "x"}], "students": []})") == ErrorCode::Parse);
  CHECK(parse_failure(R"({"schools": [{"id": 1, "value": 1}], "students": []})") == ErrorCode::Parse);
  CHECK(parse_failure(R"({"schools": [{"id": 0, "value": 1.5}], "students": []})") == ErrorCode::Parse);
  CHECK(parse_failure(R"({"schools": [{"id": 0, "value": 1}]})") == ErrorCode::Parse);
  CHECK(parse_failure(R"({"schools": [{"id": 0, "value": 1}], "students": [)") == ErrorCode::Parse);
  CHECK(parse_failure(R"({"schools": [{"id": 0, "value": 1}, {"id": 1, "value": 2}],
      "students": [{"id": 0, "group": 1, "accessible": [0], "initial": 1}]})") == ErrorCode::InaccessibleInitial);
  CHECK(parse_failure(R"({"schools": [{"id": 0, "value": 1}],
      "students": [{"id": 0, "group": 4, "accessible": [0], "initial": 0}]})") == ErrorCode::InvalidGroupCount);

  try {
    (void)instance_from_json(R"({"schools": [{"id": 0, "value": 1}],
      "students": [{"id": 0, "group": 1, "accessible": [0, "x"], "initial": 0}]})");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("students[0].accessible[1]") != std::string::npos);
  }
  CHECK_THROWS_AS(allocation_record_from_json(R"({"assignment": [0], "meta": {"bogus": 1}})"), Error);
  CHECK_THROWS_AS(allocation_record_from_json(R"({"assignment": [0], "meta": {"path_taken": "Nope"}})"), Error);
}

TEST_CASE("files on disk") {
  TempDir dir;
  write_instance(dir / "t1.json", t1());
  CHECK(read_instance(dir / "t1.json") == t1());
  const auto record = make_record(t1(), alloc(t1(), {kB, kB}), SolvePath::Adjusted);
  write_allocation(dir / "x.json", record);
  CHECK(read_allocation_record(dir / "x.json") == record);
  CHECK(read_allocation(dir / "x.json", t1()) == alloc(t1(), {kB, kB}));
  CHECK_THROWS_AS(read_allocation(dir / "x.json", t2()), Error);
  CHECK_THROWS_AS(read_instance(dir / "missing.json"), Error);
}

TEST_CASE("cli solve and verify") {
  TempDir dir;
  const auto t1_path = (dir / "t1.json").string();
  const auto out_path = (dir / "out.json").string();
  const auto bad_path = (dir / "bad.json").string();
  write_instance(t1_path, t1());

  const auto solved = run_cli({"solve", "-i", t1_path, "-o", out_path});
  CHECK(solved.code == 0);
  CHECK(solved.out.find("Adjusted") != std::string::npos);
  const auto record = read_allocation_record(out_path);
  CHECK(record.path_taken == SolvePath::Adjusted);
  CHECK(record.utilities == std::array<std::int64_t, 2>{3, 3});

  CHECK(run_cli({"verify", "-i", t1_path, "-a", out_path}).code == 0);
  CHECK(run_cli({"verify", "-i", t1_path, "-a", out_path, "--brute-force"}).code == 0);

  write_allocation(bad_path, make_record(t1(), Allocation::initial(t1())));
  const auto envy = run_cli({"verify", "-i", t1_path, "-a", bad_path});
  CHECK(envy.code == 1);
  CHECK(envy.out.find("\"Envy\"") != std::string::npos);
  CHECK(envy.out.find("\"witness\"") != std::string::npos);
  CHECK(run_cli({"verify", "-i", t1_path, "-a", bad_path, "--brute-force"}).code == 1);
}

TEST_CASE("cli usage and io errors exit with 2") {
  TempDir dir;
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"solve"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"solve", "-i", (dir / "nope.json").string(), "-o", (dir / "o.json").string()}).code == 2);
  CHECK(run_cli({"gen", "--split", "thirds", "-o", (dir / "g.json").string()}).code == 2);
  CHECK(run_cli({"bench", "--seeds", "5..x"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("cli gen and bench") {
  TempDir dir;
  const auto path = (dir / "g.json").string();
  const auto gen = run_cli({"gen", "--seed", "9", "--students", "14", "--schools", "4", "--edge-prob", "0.5",
                            "--max-value", "30", "--split", "exact:7", "-o", path});
  REQUIRE(gen.code == 0);
  GenConfig cfg;
  cfg.seed = 9;
  cfg.num_students = 14;
  cfg.num_schools = 4;
  cfg.extra_edge_prob = 0.5;
  cfg.max_value = 30;
  cfg.split = GroupSplit::parse("exact:7");
  CHECK(read_instance(path) == generate_instance(cfg));

  const auto bench = run_cli({"bench", "--seeds", "0..49", "--students", "12", "--schools", "4", "--jobs", "2"});
  CHECK(bench.code == 0);
  CHECK(bench.out.find("100.00% (50/50)") != std::string::npos);
}
