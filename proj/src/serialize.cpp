#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "redistrict/harness.hpp"

namespace redistrict {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Parse, where + ": " + what);
}

const json& require_object(const json& j, const std::string& where, std::initializer_list<std::string_view> required,
                           std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) parse_error(where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto r : required) known = known || key == r;
    for (auto o : optional) known = known || key == o;
    if (!known) parse_error(where, "unknown field '" + key + "'");
  }
  for (auto r : required) {
    if (!j.contains(std::string(r))) parse_error(where, "missing field '" + std::string(r) + "'");
  }
  return j;
}

const json& require_array(const json& j, const std::string& where) {
  if (!j.is_array()) parse_error(where, "expected an array");
  return j;
}

std::int64_t require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_error(where, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    parse_error(where, "integer out of range");
  }
  return j.get<std::int64_t>();
}

int require_small_int(const json& j, const std::string& where) {
  const auto v = require_int(j, where);
  if (v < INT32_MIN || v > INT32_MAX) parse_error(where, "integer out of range");
  return static_cast<int>(v);
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

ordered_json allocation_json(std::span<const SchoolId> assign) { return ordered_json(std::vector<int>(assign.begin(), assign.end())); }

}  // namespace

std::string instance_to_json(const Instance& inst) {
  ordered_json doc;
  doc["schools"] = ordered_json::array();
  for (SchoolId k = 0; k < inst.num_schools(); ++k) {
    doc["schools"].push_back({{"id", k}, {"value", inst.value_of(k)}});
  }
  doc["students"] = ordered_json::array();
  for (StudentId j = 0; j < inst.num_students(); ++j) {
    const auto acc = inst.accessible(j);
    doc["students"].push_back({{"id", j},
                               {"group", group_label(inst.group_of(j))},
                               {"accessible", std::vector<int>(acc.begin(), acc.end())},
                               {"initial", inst.initial(j)}});
  }
  return doc.dump(2);
}

Instance instance_from_json(std::string_view text) {
  const json doc = parse_text(text);
  require_object(doc, "instance", {"schools", "students"});

  InstanceDescription raw;
  const auto& schools = require_array(doc["schools"], "schools");
  for (std::size_t k = 0; k < schools.size(); ++k) {
    const std::string where = "schools[" + std::to_string(k) + "]";
    const auto& s = require_object(schools[k], where, {"id", "value"});
    if (require_int(s["id"], where + ".id") != static_cast<std::int64_t>(k)) {
      parse_error(where + ".id", "ids must be dense and ascending from 0");
    }
    raw.value_of.push_back(require_int(s["value"], where + ".value"));
  }

  const auto& students = require_array(doc["students"], "students");
  for (std::size_t j = 0; j < students.size(); ++j) {
    const std::string where = "students[" + std::to_string(j) + "]";
    const auto& s = require_object(students[j], where, {"id", "group", "accessible", "initial"});
    if (require_int(s["id"], where + ".id") != static_cast<std::int64_t>(j)) {
      parse_error(where + ".id", "ids must be dense and ascending from 0");
    }
    raw.group_of.push_back(require_small_int(s["group"], where + ".group"));
    auto& acc = raw.accessible.emplace_back();
    const auto& list = require_array(s["accessible"], where + ".accessible");
    for (std::size_t i = 0; i < list.size(); ++i) {
      acc.push_back(require_small_int(list[i], where + ".accessible[" + std::to_string(i) + "]"));
    }
    raw.initial.push_back(require_small_int(s["initial"], where + ".initial"));
  }
  return Instance::validate(std::move(raw));
}

AllocationRecord make_record(const Instance& inst, const Allocation& alloc, std::optional<SolvePath> path) {
  const auto a = alloc.assignment();
  return {{a.begin(), a.end()},
          path,
          std::array{utility(inst, alloc, Group::One), utility(inst, alloc, Group::Two)},
          deviation(inst, alloc)};
}

std::string allocation_to_json(const AllocationRecord& record) {
  ordered_json doc;
  doc["assignment"] = allocation_json(record.assignment);
  ordered_json meta = ordered_json::object();
  if (record.path_taken) meta["path_taken"] = std::string(to_string(*record.path_taken));
  if (record.utilities) meta["utilities"] = {(*record.utilities)[0], (*record.utilities)[1]};
  if (record.deviation) meta["deviation"] = *record.deviation;
  doc["meta"] = meta;
  return doc.dump(2);
}

AllocationRecord allocation_record_from_json(std::string_view text) {
  const json doc = parse_text(text);
  require_object(doc, "allocation", {"assignment"}, {"meta"});
  AllocationRecord record;
  const auto& list = require_array(doc["assignment"], "assignment");
  for (std::size_t j = 0; j < list.size(); ++j) {
    record.assignment.push_back(require_small_int(list[j], "assignment[" + std::to_string(j) + "]"));
  }
  if (doc.contains("meta")) {
    const auto& meta = require_object(doc["meta"], "meta", {}, {"path_taken", "utilities", "deviation"});
    if (meta.contains("path_taken")) {
      if (!meta["path_taken"].is_string()) parse_error("meta.path_taken", "expected a string");
      record.path_taken = solve_path_from_string(meta["path_taken"].get<std::string>());
      if (!record.path_taken) parse_error("meta.path_taken", "unknown solve path");
    }
    if (meta.contains("utilities")) {
      const auto& u = require_array(meta["utilities"], "meta.utilities");
      if (u.size() != 2) parse_error("meta.utilities", "expected two entries");
      record.utilities = std::array{require_int(u[0], "meta.utilities[0]"), require_int(u[1], "meta.utilities[1]")};
    }
    if (meta.contains("deviation")) record.deviation = require_small_int(meta["deviation"], "meta.deviation");
  }
  return record;
}

std::string report_to_json(const Instance& inst, const EnvyReport& report) {
  ordered_json doc;
  doc["is_1ref"] = report.is_1ref;
  doc["deviation"] = report.deviation;
  doc["deviation_ok"] = report.deviation_ok;
  doc["pairs"] = ordered_json::array();
  for (const auto& p : report.pairs) {
    ordered_json entry;
    entry["envious"] = group_label(p.envious);
    entry["envied"] = group_label(p.envied);
    entry["verdict"] = std::string(to_string(p.verdict));
    entry["current_utility"] = p.current_utility;
    if (p.witness) {
      entry["witness"] = allocation_json(p.witness->assignment());
      entry["witness_utility"] = p.witness_utility;
      entry["witness_deviation"] = deviation(inst, *p.witness);
    }
    doc["pairs"].push_back(entry);
  }
  return doc.dump(2);
}

void write_instance(const std::filesystem::path& path, const Instance& inst) { write_file(path, instance_to_json(inst)); }

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_file(path)); }

void write_allocation(const std::filesystem::path& path, const AllocationRecord& record) {
  write_file(path, allocation_to_json(record));
}

AllocationRecord read_allocation_record(const std::filesystem::path& path) {
  return allocation_record_from_json(read_file(path));
}

Allocation read_allocation(const std::filesystem::path& path, const Instance& inst) {
  return Allocation::from_assignment(inst, read_allocation_record(path).assignment);
}

}  // namespace redistrict
