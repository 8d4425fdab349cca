#include "redistrict/core.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace redistrict {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGroupCount: return "InvalidGroupCount";
    case ErrorCode::InaccessibleInitial: return "InaccessibleInitial";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::InvalidAllocation: return "InvalidAllocation";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Instance Instance::validate(InstanceDescription raw) {
  const auto n = raw.group_of.size();
  const auto m = raw.value_of.size();
  if (raw.accessible.size() != n || raw.initial.size() != n) {
    throw Error(ErrorCode::InvalidInstance, "per-student fields have inconsistent lengths");
  }
  if (m == 0) throw Error(ErrorCode::InvalidInstance, "instance has no schools");
  if (n > static_cast<std::size_t>(std::numeric_limits<int>::max()) ||
      m > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw Error(ErrorCode::Overflow, "too many students or schools");
  }

  Instance inst;
  inst.group_of_.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int label = raw.group_of[j];
    if (label != 1 && label != 2) {
      throw Error(ErrorCode::InvalidGroupCount,
                  "student " + std::to_string(j) + " has group label " + std::to_string(label) +
                      "; only groups 1 and 2 are supported");
    }
    inst.group_of_.push_back(static_cast<Group>(label));
    ++inst.group_size_[label - 1];
  }

  std::int64_t max_value = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const auto v = raw.value_of[k];
    if (v < 0) {
      throw Error(ErrorCode::InvalidInstance, "school " + std::to_string(k) + " has a negative value");
    }
    if (v > kMaxSchoolValue) {
      throw Error(ErrorCode::Overflow, "school " + std::to_string(k) + " value exceeds " +
                                           std::to_string(kMaxSchoolValue));
    }
    max_value = std::max(max_value, v);
  }
  if (max_value > 0 && static_cast<std::int64_t>(n) > std::numeric_limits<std::int64_t>::max() / max_value) {
    throw Error(ErrorCode::Overflow, "n * max value does not fit in 64 bits");
  }
  inst.value_of_ = std::move(raw.value_of);

  inst.accessible_ = std::move(raw.accessible);
  for (std::size_t j = 0; j < n; ++j) {
    auto& acc = inst.accessible_[j];
    if (acc.empty()) {
      throw Error(ErrorCode::InvalidInstance, "student " + std::to_string(j) + " has no accessible school");
    }
    std::sort(acc.begin(), acc.end());
    if (std::adjacent_find(acc.begin(), acc.end()) != acc.end()) {
      throw Error(ErrorCode::InvalidInstance,
                  "student " + std::to_string(j) + " lists an accessible school twice");
    }
    if (acc.front() < 0 || acc.back() >= static_cast<SchoolId>(m)) {
      throw Error(ErrorCode::InvalidInstance,
                  "student " + std::to_string(j) + " lists an unknown school");
    }
  }

  inst.capacity_.assign(m, 0);
  inst.initial_ = std::move(raw.initial);
  for (std::size_t j = 0; j < n; ++j) {
    const SchoolId k = inst.initial_[j];
    if (!std::binary_search(inst.accessible_[j].begin(), inst.accessible_[j].end(), k)) {
      throw Error(ErrorCode::InaccessibleInitial,
                  "student " + std::to_string(j) + " is initially at school " + std::to_string(k) +
                      " which is not accessible");
    }
    ++inst.capacity_[k];
  }
  return inst;
}

bool Instance::can_access(StudentId j, SchoolId k) const {
  const auto& acc = accessible_[j];
  return std::binary_search(acc.begin(), acc.end(), k);
}

InstanceDescription Instance::describe() const {
  InstanceDescription d;
  d.group_of.reserve(group_of_.size());
  for (Group g : group_of_) d.group_of.push_back(group_label(g));
  d.value_of = value_of_;
  d.accessible = accessible_;
  d.initial = initial_;
  return d;
}

Allocation Allocation::from_assignment(const Instance& inst, std::vector<SchoolId> assign) {
  if (static_cast<int>(assign.size()) != inst.num_students()) {
    throw Error(ErrorCode::InvalidAllocation, "assignment has " + std::to_string(assign.size()) +
                                                  " entries for " + std::to_string(inst.num_students()) +
                                                  " students");
  }
  Allocation a;
  a.counts_.assign(inst.num_schools(), {0, 0});
  for (StudentId j = 0; j < inst.num_students(); ++j) {
    const SchoolId k = assign[j];
    if (k < 0 || k >= inst.num_schools() || !inst.can_access(j, k)) {
      throw Error(ErrorCode::InvalidAllocation,
                  "student " + std::to_string(j) + " cannot attend school " + std::to_string(k));
    }
    ++a.counts_[k][group_index(inst.group_of(j))];
  }
  a.assign_ = std::move(assign);
  return a;
}

Allocation Allocation::initial(const Instance& inst) {
  const auto b = inst.initial_assignment();
  return from_assignment(inst, {b.begin(), b.end()});
}

void Allocation::move(const Instance& inst, StudentId j, SchoolId to) {
  if (!inst.can_access(j, to)) {
    throw Error(ErrorCode::InvalidAllocation,
                "student " + std::to_string(j) + " cannot attend school " + std::to_string(to));
  }
  const int gi = group_index(inst.group_of(j));
  --counts_[assign_[j]][gi];
  ++counts_[to][gi];
  assign_[j] = to;
}

std::int64_t utility(const Instance& inst, const Allocation& alloc, Group g) {
  std::int64_t total = 0;
  for (StudentId j = 0; j < inst.num_students(); ++j) {
    if (inst.group_of(j) == g) total += inst.value_of(alloc[j]);
  }
  return total;
}

int deviation(const Instance& inst, const Allocation& alloc) {
  int d = 0;
  for (SchoolId k = 0; k < inst.num_schools(); ++k) {
    d = std::max(d, std::abs(alloc.total(k) - inst.capacity(k)));
  }
  return d;
}

bool is_amount_preserving(const Instance& inst, const Allocation& alloc) {
  return deviation(inst, alloc) == 0;
}

}  // namespace redistrict
