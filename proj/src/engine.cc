#include "platoon/engine.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace platoon {
namespace {

constexpr double kDefaultSpacing = 10.0;  // m between bumpers at t = 0

std::size_t step_count(const Scenario& s) {
  return static_cast<std::size_t>(std::ceil(s.t_end / s.dt - 1e-9));
}

void require(bool ok, const std::string& key, double value,
             const std::string& what) {
  if (!ok) {
    throw ConfigError(ConfigError::Kind::kOutOfRange,
                      key + ": " + what + " (got " + std::to_string(value) +
                          ")");
  }
}

}  // namespace

void validate(const Scenario& s) {
  require(s.road_length > 0.0 && std::isfinite(s.road_length), "road_length",
          s.road_length, "must be > 0");
  require(s.n_vehicles >= 1, "n_vehicles", s.n_vehicles, "must be >= 1");
  require(s.comm_range >= 1, "comm_range", s.comm_range, "must be >= 1");
  require(s.dt > 0.0 && std::isfinite(s.dt), "dt", s.dt, "must be > 0");
  require(s.t_end > 0.0 && std::isfinite(s.t_end), "t_end", s.t_end,
          "must be > 0");
  try {
    validate(s.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ConfigError::Kind::kOutOfRange, e.what());
  }
  if (s.initial) {
    const auto& init = *s.initial;
    if (std::cmp_not_equal(init.size(), s.n_vehicles)) {
      throw ConfigError(ConfigError::Kind::kOutOfRange,
                        "initial: expected " + std::to_string(s.n_vehicles) +
                            " entries (got " + std::to_string(init.size()) +
                            ")");
    }
    for (std::size_t i = 0; i < init.size(); ++i) {
      const std::string key = "initial[" + std::to_string(i) + "]";
      require(std::isfinite(init[i].x), key + ".x", init[i].x,
              "must be finite");
      require(init[i].v >= 0.0 && std::isfinite(init[i].v), key + ".v",
              init[i].v, "must be >= 0");
      if (i > 0) {
        const double gap = init[i - 1].x - init[i].x - s.params.length;
        if (!(gap > 0.0)) {
          throw ConfigError(ConfigError::Kind::kOverlap,
                            key + ".x: overlaps the vehicle ahead (got " +
                                std::to_string(init[i].x) + ", gap " +
                                std::to_string(gap) + " m)");
        }
      }
    }
  }
  for (std::size_t i = 0; i < s.attacks.size(); ++i) {
    const std::string key = "attacks[" + std::to_string(i) + "]";
    try {
      validate(s.attacks[i]);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(ConfigError::Kind::kOutOfRange, key + ": " + e.what());
    }
    for (const auto id : s.attacks[i].targets) {
      require(id.value >= 1 && id.value <= s.n_vehicles, key + ".targets",
              id.value, "no such vehicle");
    }
  }
}

std::vector<VehicleState> initial_states(const Scenario& s) {
  std::vector<VehicleState> states;
  states.reserve(static_cast<std::size_t>(s.n_vehicles));
  for (int n = 1; n <= s.n_vehicles; ++n) {
    VehicleState state{VehicleId{n}};
    if (s.initial) {
      const auto& init = (*s.initial)[static_cast<std::size_t>(n - 1)];
      state.x = init.x;
      state.v = init.v;
    } else {
      state.x = -(n - 1) * (s.params.length + kDefaultSpacing);
    }
    states.push_back(state);
  }
  return states;
}

std::vector<CollisionEvent> detect_collisions(
    std::span<const VehicleState> states, double vehicle_length, double t) {
  std::vector<CollisionEvent> events;
  for (std::size_t i = 1; i < states.size(); ++i) {
    const double gap = states[i - 1].x - states[i].x - vehicle_length;
    if (gap <= 0.0) {
      events.push_back({t, states[i].id, states[i - 1].id, gap});
    }
  }
  return events;
}

StepResult step(std::span<const VehicleState> states, const Scenario& scenario,
                double t) {
  const auto& p = scenario.params;
  std::vector<double> accel(states.size(), 0.0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& self = states[i];
    if (self.frozen) continue;
    auto frame = build_perception(states, self.id, scenario.comm_range,
                                  scenario.road_length, p.length);
    const bool attacked = perception_attacked(self.id, scenario.attacks, t);
    frame = apply_perception_attacks(std::move(frame), scenario.attacks, t);
    if (attacked) {
      const double floor = self.x + p.length + kMinPerceivedGap;
      for (auto& obs : frame.observations) {
        obs.position = std::max(obs.position, floor);
      }
    }
    const double a =
        multi_leader_accel(self.x, self.v, frame.observations, p);
    accel[i] = apply_actuation_attack(a, self.id, scenario.attacks, t);
  }

  StepResult result;
  result.next.assign(states.begin(), states.end());
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& s = result.next[i];
    if (s.frozen) {
      s.v = 0.0;
      s.last_accel = 0.0;
      continue;
    }
    const double v_next = std::max(0.0, s.v + accel[i] * scenario.dt);
    s.x += 0.5 * (s.v + v_next) * scenario.dt;
    s.v = v_next;
    s.last_accel = accel[i];
  }
  result.collisions =
      detect_collisions(result.next, p.length, t + scenario.dt);
  return result;
}

namespace {

void append_tick(TrajectoryLog& log, std::span<const VehicleState> states,
                 std::span<const VehicleState> next, double t,
                 double vehicle_length) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    TrajectoryRecord r{t, states[i].id, states[i].x, states[i].v,
                       next[i].last_accel, std::nullopt};
    if (i > 0) r.gap = states[i - 1].x - states[i].x - vehicle_length;
    log.records.push_back(r);
  }
}

}  // namespace

RunResult run(const Scenario& scenario) {
  validate(scenario);
  RunResult result;
  auto& log = result.log;
  log.dt = scenario.dt;
  log.road_length = scenario.road_length;

  auto states = initial_states(scenario);
  for (const auto& s : states) log.vehicles.push_back(s.id);

  const std::size_t steps = step_count(scenario);
  log.records.reserve((steps + 1) * states.size());
  std::set<std::pair<int, int>> reported;

  std::size_t k = 0;
  for (; k < steps; ++k) {
    const double t = static_cast<double>(k) * scenario.dt;
    auto [next, events] = step(states, scenario, t);
    append_tick(log, states, next, t, scenario.params.length);
    states = std::move(next);

    bool collided = false;
    for (auto& e : events) {
      if (!reported.insert({e.follower.value, e.leader.value}).second) {
        continue;
      }
      e.t = static_cast<double>(k + 1) * scenario.dt;
      result.collisions.push_back(e);
      collided = true;
      if (scenario.collision_policy != CollisionPolicy::kFreeze) continue;
      for (auto& s : states) {
        if (s.id == e.follower || s.id == e.leader) {
          s.frozen = true;
          s.v = 0.0;
        }
      }
    }
    if (collided && scenario.collision_policy == CollisionPolicy::kHalt) {
      ++k;
      break;
    }
  }
  append_tick(log, states, states, static_cast<double>(k) * scenario.dt,
              scenario.params.length);
  result.final_states = std::move(states);
  return result;
}

}  // namespace platoon
