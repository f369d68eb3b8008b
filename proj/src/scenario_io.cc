#include "platoon/scenario_io.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace platoon {
namespace {

using json = nlohmann::json;
using Kind = ConfigError::Kind;

void reject_unknown_keys(const json& object, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(Kind::kUnknownKey,
                        (where.empty() ? key : where + "." + key) +
                            ": unknown key (value " + value.dump() + ")");
    }
  }
}

const json& require_object(const json& value, const std::string& key) {
  if (!value.is_object()) {
    throw ConfigError(Kind::kType,
                      key + ": expected an object (got " + value.dump() + ")");
  }
  return value;
}

double read_number(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw ConfigError(Kind::kType,
                      key + ": expected a number (got " + value.dump() + ")");
  }
  return value.get<double>();
}

int read_integer(const json& value, const std::string& key) {
  if (!value.is_number_integer() ||
      value.get<long long>() > std::numeric_limits<int>::max() ||
      value.get<long long>() < std::numeric_limits<int>::min()) {
    throw ConfigError(Kind::kType,
                      key + ": expected an integer (got " + value.dump() + ")");
  }
  return value.get<int>();
}

template <typename T, typename Reader>
void read_optional(const json& object, const char* name,
                   const std::string& prefix, T& out, Reader reader) {
  if (const auto it = object.find(name); it != object.end()) {
    out = reader(*it, prefix + name);
  }
}

IdmParams read_params(const json& value) {
  require_object(value, "params");
  reject_unknown_keys(value, "params", {"v0", "s0", "a", "b", "T", "delta", "l"});
  IdmParams p;
  read_optional(value, "v0", "params.", p.v0, read_number);
  read_optional(value, "s0", "params.", p.s0, read_number);
  read_optional(value, "a", "params.", p.a, read_number);
  read_optional(value, "b", "params.", p.b, read_number);
  read_optional(value, "T", "params.", p.T, read_number);
  read_optional(value, "delta", "params.", p.delta, read_number);
  read_optional(value, "l", "params.", p.length, read_number);
  return p;
}

std::vector<InitialState> read_initial(const json& value) {
  if (!value.is_array()) {
    throw ConfigError(Kind::kType, "initial: expected \"default\" or an array "
                                   "of {x, v} (got " + value.dump() + ")");
  }
  std::vector<InitialState> initial;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string key = "initial[" + std::to_string(i) + "]";
    const auto& entry = require_object(value[i], key);
    reject_unknown_keys(entry, key, {"x", "v"});
    if (!entry.contains("x") || !entry.contains("v")) {
      throw ConfigError(Kind::kType, key + ": requires both x and v (got " +
                                         entry.dump() + ")");
    }
    initial.push_back({read_number(entry["x"], key + ".x"),
                       read_number(entry["v"], key + ".v")});
  }
  return initial;
}

Attack read_attack(const json& value, const std::string& key) {
  require_object(value, key);
  const auto kind_it = value.find("kind");
  if (kind_it == value.end() || !kind_it->is_string()) {
    throw ConfigError(Kind::kType, key + ".kind: expected a string (got " +
                                       (kind_it == value.end()
                                            ? std::string("nothing")
                                            : kind_it->dump()) +
                                       ")");
  }
  const auto kind = kind_it->get<std::string>();
  const auto payload = [&](const char* name) {
    if (!value.contains(name)) {
      throw ConfigError(Kind::kType, key + "." + name + ": required for kind " +
                                         kind + " (got nothing)");
    }
    return read_number(value[name], key + "." + name);
  };

  Attack attack;
  if (kind == "position_offset") {
    reject_unknown_keys(value, key, {"kind", "dx", "targets", "start", "duration"});
    attack.kind = PositionOffset{payload("dx")};
  } else if (kind == "velocity_scale") {
    reject_unknown_keys(value, key, {"kind", "k", "targets", "start", "duration"});
    attack.kind = VelocityScale{payload("k")};
  } else if (kind == "drop_leaders") {
    reject_unknown_keys(value, key, {"kind", "targets", "start", "duration"});
    attack.kind = DropLeaders{};
  } else if (kind == "force_acceleration") {
    reject_unknown_keys(value, key, {"kind", "af", "targets", "start", "duration"});
    attack.kind = ForceAcceleration{payload("af")};
  } else {
    throw ConfigError(Kind::kOutOfRange,
                      key + ".kind: expected one of position_offset, "
                            "velocity_scale, drop_leaders, force_acceleration "
                            "(got \"" + kind + "\")");
  }

  const auto targets = value.find("targets");
  if (targets == value.end() || !targets->is_array()) {
    throw ConfigError(Kind::kType,
                      key + ".targets: expected an array of vehicle ids (got " +
                          (targets == value.end() ? std::string("nothing")
                                                  : targets->dump()) +
                          ")");
  }
  for (std::size_t i = 0; i < targets->size(); ++i) {
    attack.targets.push_back(VehicleId{read_integer(
        (*targets)[i], key + ".targets[" + std::to_string(i) + "]")});
  }
  if (!value.contains("start")) {
    throw ConfigError(Kind::kType, key + ".start: required (got nothing)");
  }
  attack.start = read_number(value["start"], key + ".start");
  read_optional(value, "duration", key + ".", attack.duration, read_number);
  return attack;
}

CollisionPolicy read_policy(const json& value, const std::string& key) {
  if (value == "halt") return CollisionPolicy::kHalt;
  if (value == "freeze") return CollisionPolicy::kFreeze;
  throw ConfigError(Kind::kOutOfRange, key + ": expected \"halt\" or \"freeze\" "
                                             "(got " + value.dump() + ")");
}

nlohmann::ordered_json attack_to_json(const Attack& attack) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  std::visit(
      [&](const auto& kind) {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, PositionOffset>) {
          out["kind"] = "position_offset";
          out["dx"] = kind.dx;
        } else if constexpr (std::is_same_v<K, VelocityScale>) {
          out["kind"] = "velocity_scale";
          out["k"] = kind.k;
        } else if constexpr (std::is_same_v<K, DropLeaders>) {
          out["kind"] = "drop_leaders";
        } else {
          out["kind"] = "force_acceleration";
          out["af"] = kind.af;
        }
      },
      attack.kind);
  nlohmann::ordered_json targets = nlohmann::ordered_json::array();
  for (const auto id : attack.targets) targets.push_back(id.value);
  out["targets"] = targets;
  out["start"] = attack.start;
  if (std::isfinite(attack.duration)) out["duration"] = attack.duration;
  return out;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

}  // namespace

ScenarioDocument parse_scenario_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(Kind::kSyntax, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError(Kind::kType, "scenario: expected a JSON object (got " +
                                       root.dump() + ")");
  }
  reject_unknown_keys(root, "",
                      {"road_length", "n_vehicles", "params", "comm_range",
                       "dt", "t_end", "checkpoint", "collision_policy",
                       "initial", "attacks", "output"});

  ScenarioDocument doc;
  auto& s = doc.scenario;
  read_optional(root, "road_length", "", s.road_length, read_number);
  read_optional(root, "n_vehicles", "", s.n_vehicles, read_integer);
  read_optional(root, "comm_range", "", s.comm_range, read_integer);
  read_optional(root, "dt", "", s.dt, read_number);
  read_optional(root, "t_end", "", s.t_end, read_number);
  read_optional(root, "checkpoint", "", doc.checkpoint, read_number);
  read_optional(root, "collision_policy", "", s.collision_policy, read_policy);
  if (root.contains("params")) s.params = read_params(root["params"]);
  if (const auto it = root.find("initial");
      it != root.end() && *it != "default") {
    s.initial = read_initial(*it);
  }
  if (const auto it = root.find("attacks"); it != root.end()) {
    if (!it->is_array()) {
      throw ConfigError(Kind::kType, "attacks: expected an array (got " +
                                         it->dump() + ")");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      s.attacks.push_back(
          read_attack((*it)[i], "attacks[" + std::to_string(i) + "]"));
    }
  }
  if (const auto it = root.find("output"); it != root.end()) {
    require_object(*it, "output");
    reject_unknown_keys(*it, "output", {"plot"});
    if (it->contains("plot")) {
      if (!(*it)["plot"].is_boolean()) {
        throw ConfigError(Kind::kType, "output.plot: expected a boolean (got " +
                                           (*it)["plot"].dump() + ")");
      }
      doc.plot = (*it)["plot"].get<bool>();
    }
  }

  validate(s);
  if (!(doc.checkpoint >= 0.0 && doc.checkpoint <= s.road_length)) {
    throw ConfigError(Kind::kOutOfRange,
                      "checkpoint: must lie within [0, road_length] (got " +
                          format_number(doc.checkpoint) + ")");
  }
  return doc;
}

Scenario parse_scenario(std::string_view text) {
  return parse_scenario_document(text).scenario;
}

std::string write_scenario(const ScenarioDocument& doc) {
  const auto& s = doc.scenario;
  nlohmann::ordered_json out;
  out["road_length"] = s.road_length;
  out["n_vehicles"] = s.n_vehicles;
  out["params"] = {{"v0", s.params.v0}, {"s0", s.params.s0},
                   {"a", s.params.a},   {"b", s.params.b},
                   {"T", s.params.T},   {"delta", s.params.delta},
                   {"l", s.params.length}};
  out["comm_range"] = s.comm_range;
  out["dt"] = s.dt;
  out["t_end"] = s.t_end;
  out["checkpoint"] = doc.checkpoint;
  out["collision_policy"] =
      s.collision_policy == CollisionPolicy::kHalt ? "halt" : "freeze";
  if (s.initial) {
    auto& initial = out["initial"] = nlohmann::ordered_json::array();
    for (const auto& i : *s.initial) initial.push_back({{"x", i.x}, {"v", i.v}});
  } else {
    out["initial"] = "default";
  }
  auto& attacks = out["attacks"] = nlohmann::ordered_json::array();
  for (const auto& a : s.attacks) attacks.push_back(attack_to_json(a));
  out["output"] = {{"plot", doc.plot}};
  return out.dump(2) + "\n";
}

std::string write_trajectory_csv(const TrajectoryLog& log) {
  std::string out = "t,id,x,v,a,gap\n";
  out.reserve(out.size() + log.records.size() * 48);
  for (const auto& r : log.records) {
    out += format_number(r.t);
    out += ',';
    out += to_string(r.id);
    out += ',';
    out += format_number(r.x);
    out += ',';
    out += format_number(r.v);
    out += ',';
    out += format_number(r.accel);
    out += ',';
    if (r.gap) out += format_number(*r.gap);
    out += '\n';
  }
  return out;
}

TrajectoryLog read_trajectory_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "t,id,x,v,a,gap") {
    throw std::invalid_argument("trajectory csv: missing header");
  }
  TrajectoryLog log;
  std::size_t line_no = 1;
  bool first_tick = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 6) {
      throw std::invalid_argument("trajectory csv: line " +
                                  std::to_string(line_no) +
                                  " does not have 6 fields");
    }
    TrajectoryRecord r;
    try {
      r.t = std::stod(fields[0]);
      r.id = VehicleId{std::stoi(fields[1])};
      r.x = std::stod(fields[2]);
      r.v = std::stod(fields[3]);
      r.accel = std::stod(fields[4]);
      if (!fields[5].empty()) r.gap = std::stod(fields[5]);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("trajectory csv: bad number on line " +
                                  std::to_string(line_no));
    }
    if (first_tick && !log.records.empty() && r.t != log.records.front().t) {
      first_tick = false;
    }
    if (first_tick) log.vehicles.push_back(r.id);
    log.records.push_back(r);
  }
  if (!log.vehicles.empty() && log.records.size() % log.vehicles.size() != 0) {
    throw std::invalid_argument("trajectory csv: ragged ticks");
  }
  if (log.tick_count() >= 2) {
    log.dt = log.tick(1)[0].t - log.tick(0)[0].t;
  }
  return log;
}

std::string summary_to_json(const RunSummary& summary) {
  nlohmann::ordered_json out;
  out["checkpoint"] = summary.checkpoint;
  out["collision_count"] = summary.collisions.size();
  auto& collisions = out["collisions"] = nlohmann::ordered_json::array();
  for (const auto& e : summary.collisions) {
    collisions.push_back({{"t", e.t},
                          {"follower", e.follower.value},
                          {"leader", e.leader.value},
                          {"gap", e.gap}});
  }
  auto& arrivals = out["arrivals"] = nlohmann::ordered_json::object();
  for (const auto& [id, t] : summary.arrivals) {
    arrivals[to_string(id)] = t ? nlohmann::ordered_json(*t) : nullptr;
  }
  if (summary.delays) {
    auto& delays = out["delays"] = nlohmann::ordered_json::object();
    for (const auto& [id, d] : *summary.delays) delays[to_string(id)] = d;
  }
  return out.dump(2) + "\n";
}

}  // namespace platoon
