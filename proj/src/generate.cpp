#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "redistrict/harness.hpp"

namespace redistrict {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Largest multiple of bound representable in 64 bits marks the rejection
  // threshold.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

GroupSplit GroupSplit::parse(std::string_view text) {
  const auto fail = [&] {
    throw Error(ErrorCode::PreconditionViolated,
                "group split must be equal, ratio:<p> or exact:<n1>, got '" + std::string(text) + "'");
  };
  GroupSplit s;
  if (text == "equal") return s;
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) fail();
  const auto kind = text.substr(0, colon);
  const std::string arg(text.substr(colon + 1));
  if (arg.empty()) fail();
  std::size_t used = 0;
  try {
    if (kind == "ratio") {
      s.kind = Kind::Ratio;
      s.ratio = std::stod(arg, &used);
    } else if (kind == "exact") {
      s.kind = Kind::Exact;
      s.group1 = std::stoi(arg, &used);
    } else {
      fail();
    }
  } catch (const std::logic_error&) {
    fail();
  }
  if (used != arg.size()) fail();
  return s;
}

std::string GroupSplit::to_string() const {
  switch (kind) {
    case Kind::Equal: return "equal";
    case Kind::Ratio: {
      std::ostringstream os;
      os << "ratio:" << ratio;
      return os.str();
    }
    case Kind::Exact: return "exact:" + std::to_string(group1);
  }
  return "equal";
}

void GenConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(ErrorCode::PreconditionViolated, what); };
  if (num_students < 1) bad("num_students must be at least 1");
  if (num_schools < 1) bad("num_schools must be at least 1");
  if (!(extra_edge_prob >= 0.0 && extra_edge_prob <= 1.0)) bad("edge probability must lie in [0, 1]");
  if (max_value < 0 || max_value > kMaxSchoolValue) bad("max_value must lie in [0, 1000000]");
  if (split.kind == GroupSplit::Kind::Ratio && !(split.ratio >= 0.0 && split.ratio <= 1.0)) {
    bad("group ratio must lie in [0, 1]");
  }
  if (split.kind == GroupSplit::Kind::Exact && (split.group1 < 0 || split.group1 > num_students)) {
    bad("exact group-1 size must lie in [0, num_students]");
  }
}

Instance generate_instance(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const int n = cfg.num_students;
  const int m = cfg.num_schools;

  InstanceDescription raw;
  raw.group_of.resize(n);
  if (cfg.split.kind == GroupSplit::Kind::Ratio) {
    for (auto& g : raw.group_of) g = rng.unit() < cfg.split.ratio ? 1 : 2;
  } else {
    const int n1 = cfg.split.kind == GroupSplit::Kind::Equal ? n / 2 : cfg.split.group1;
    for (int j = 0; j < n; ++j) raw.group_of[j] = j < n1 ? 1 : 2;
    for (int j = n - 1; j > 0; --j) {
      std::swap(raw.group_of[j], raw.group_of[rng.below(static_cast<std::uint64_t>(j) + 1)]);
    }
  }

  raw.initial.resize(n);
  for (auto& b : raw.initial) b = static_cast<SchoolId>(rng.below(m));

  raw.accessible.resize(n);
  for (int j = 0; j < n; ++j) {
    for (SchoolId k = 0; k < m; ++k) {
      if (k == raw.initial[j] || rng.unit() < cfg.extra_edge_prob) raw.accessible[j].push_back(k);
    }
  }

  raw.value_of.resize(m);
  for (auto& v : raw.value_of) v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cfg.max_value) + 1));

  return Instance::validate(std::move(raw));
}

}  // namespace redistrict
