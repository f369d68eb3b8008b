// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/brute_force.h"
#include "platoon/engine.h"
#include "platoon/idm.h"
#include "platoon/metrics.h"
#include "platoon/scenario_io.h"

namespace {

using namespace platoon;
namespace fs = std::filesystem;

const fs::path kScenarios = PLATOON_SCENARIO_DIR;

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

ScenarioDocument load(const std::string& name) {
  std::ifstream in(kScenarios / name);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_document(text.str());
}

bool has_event(const std::vector<CollisionEvent>& events, int follower,
               int leader, double lo, double hi) {
  for (const auto& e : events) {
    if (e.follower.value == follower && e.leader.value == leader &&
        e.t >= lo && e.t < hi) {
      return true;
    }
  }
  return false;
}

std::string describe(const std::vector<CollisionEvent>& events) {
  std::string out = "events:";
  for (const auto& e : events) {
    out += " (" + to_string(e.follower) + "->" + to_string(e.leader) + " @" +
           fmt("%.1f", e.t) + "s)";
  }
  return events.empty() ? "no events" : out;
}

double vehicle6_delay(const TrajectoryLog& baseline, const RunResult& r,
                      double checkpoint) {
  const auto d = travel_delay(baseline, r.log, VehicleId{6}, checkpoint);
  return d ? *d : std::nan("");
}

// 1. Baseline: no collisions, cruise band, leader slows monotonically.
Verdict baseline_cruise() {
  Verdict v;
  const auto doc = load("baseline.json");
  const auto start = std::chrono::steady_clock::now();
  const auto result = run(doc.scenario);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  v.check(seconds < 1.0, "runtime " + fmt("%.3f", seconds) + " s >= 1 s");
  v.check(result.collisions.empty(), describe(result.collisions));

  const auto& log = result.log;
  const auto& p = doc.scenario.params;
  const double band_lo = p.v0 - 0.5, band_hi = p.v0;

  // Cruise ends when the platoon leader falls back below the band.
  std::size_t slowdown = log.tick_count();
  bool reached = false;
  for (std::size_t k = 0; k < log.tick_count(); ++k) {
    const double speed = log.tick(k)[0].v;
    if (speed >= band_lo) {
      reached = true;
    } else if (reached) {
      slowdown = k;
      break;
    }
  }
  for (std::size_t c = 0; c < log.vehicles.size(); ++c) {
    std::optional<std::size_t> first;
    double peak = 0.0;
    bool held = true;
    for (std::size_t k = 0; k < slowdown; ++k) {
      const double speed = log.tick(k)[c].v;
      peak = std::max(peak, speed);
      if (!first && speed >= band_lo) first = k;
      if (first && (speed < band_lo || speed > band_hi)) held = false;
    }
    v.check(first.has_value() && held,
            "vehicle " + to_string(log.vehicles[c]) +
                (first ? " leaves the band" : " peaks at " + fmt("%.3f", peak)));
  }

  bool braking = false;
  double previous = 0.0;
  int rises = 0;
  for (std::size_t k = 0; k < log.tick_count(); ++k) {
    const auto& leader = log.tick(k)[0];
    const double gap = doc.scenario.road_length - leader.x;
    if (!braking && gap < desired_gap(leader.v, leader.v, p)) braking = true;
    if (braking && k > 0 && leader.v > previous) ++rises;
    previous = leader.v;
  }
  v.check(braking, "leader never entered its road-end braking zone");
  v.check(rises == 0, std::to_string(rises) + " leader speed increases while braking");
  return v;
}

// 2. Spacing false message.
Verdict spacing_attack() {
  Verdict v;
  const auto r = run(load("spacing_attack.json").scenario);
  v.check(has_event(r.collisions, 5, 4, 10.0, 85.0), describe(r.collisions));
  if (v.pass) v.detail = describe(r.collisions);
  return v;
}

// 3 and 5 share the baseline and the velocity-attack delay.
struct DelayRuns {
  double velocity_delay = 0, accel_delay = 0;
  std::vector<CollisionEvent> velocity_events, accel_events;
};

const DelayRuns& delay_runs() {
  static const DelayRuns runs = [] {
    DelayRuns d;
    const auto baseline = run(load("baseline.json").scenario);
    const auto velocity_doc = load("velocity_attack.json");
    const auto velocity = run(velocity_doc.scenario);
    const auto accel_doc = load("acceleration_attack.json");
    const auto accel = run(accel_doc.scenario);
    d.velocity_delay =
        vehicle6_delay(baseline.log, velocity, velocity_doc.checkpoint);
    d.accel_delay = vehicle6_delay(baseline.log, accel, accel_doc.checkpoint);
    d.velocity_events = velocity.collisions;
    d.accel_events = accel.collisions;
    return d;
  }();
  return runs;
}

Verdict velocity_attack() {
  Verdict v;
  const auto& d = delay_runs();
  v.check(d.velocity_events.empty(), describe(d.velocity_events));
  v.check(d.velocity_delay > 0.0,
          "vehicle 6 delay " + fmt("%.3f", d.velocity_delay));
  if (v.pass) v.detail = "vehicle 6 delay " + fmt("%.2f s", d.velocity_delay);
  return v;
}

// 4. Platoon-leader identity.
Verdict identity_attack() {
  Verdict v;
  const auto r = run(load("identity_attack.json").scenario);
  v.check(has_event(r.collisions, 5, 4, 10.0, 80.0), describe(r.collisions));
  if (v.pass) v.detail = describe(r.collisions);
  return v;
}

// 5. Acceleration manipulation.
Verdict acceleration_attack() {
  Verdict v;
  const auto& d = delay_runs();
  v.check(d.accel_events.empty(), describe(d.accel_events));
  v.check(d.accel_delay > 0.0, "vehicle 6 delay " + fmt("%.3f", d.accel_delay));
  v.check(d.accel_delay > d.velocity_delay,
          "delay " + fmt("%.3f", d.accel_delay) + " not above velocity-attack " +
              fmt("%.3f", d.velocity_delay));
  if (v.pass) {
    v.detail = "vehicle 6 delay " + fmt("%.2f s", d.accel_delay) + " > " +
               fmt("%.2f s", d.velocity_delay);
  }
  return v;
}

// 6. Coordinated multi-vehicle attack under freeze.
Verdict multi_vehicle_attack() {
  Verdict v;
  const auto doc = load("multi_vehicle_attack.json");
  v.check(doc.scenario.collision_policy == CollisionPolicy::kFreeze,
          "scenario is not under freeze");
  const auto r = run(doc.scenario);
  v.check(r.collisions.size() >= 2, describe(r.collisions));
  v.check(has_event(r.collisions, 8, 7, 10.0, 20.0 + 1e-9),
          "no (8 -> 7) collision within 10 s; " + describe(r.collisions));
  if (v.pass) v.detail = describe(r.collisions);
  return v;
}

// 7. Equilibrium fixpoint.
Verdict equilibrium_fixpoint() {
  Verdict v;
  const IdmParams p;
  double worst = 0;
  for (int i = 1; i <= 19; ++i) {
    const double speed = 0.5 * i;
    worst = std::max(worst,
                     std::abs(idm_accel(speed, 0, equilibrium_gap(speed, p), p)));
  }
  v.check(worst < 1e-9, "max residual " + fmt("%.3e", worst));
  if (v.pass) v.detail = "max residual " + fmt("%.2e", worst);
  return v;
}

// 8. Min-dominance and prefix monotonicity.
Verdict multi_leader_properties() {
  Verdict v;
  const IdmParams p;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> speed(0, 12), spacing(0.2, 80),
      x0(-500, 500);
  std::uniform_int_distribution<int> count(1, 6);
  int violations = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    const double x = x0(rng), vel = speed(rng);
    std::vector<LeaderObservation> obs;
    double pos = x + p.length;
    for (int k = count(rng); k > 0; --k) {
      pos += spacing(rng);
      obs.push_back({pos, speed(rng)});
      pos += p.length;
    }
    const double all = multi_leader_accel(x, vel, obs, p);
    const double nearest = idm_accel(vel, vel - obs[0].velocity,
                                     obs[0].position - x - p.length, p);
    if (all > nearest) ++violations;
    for (std::size_t k = 0; k < obs.size(); ++k) {
      const std::span<const LeaderObservation> shorter(obs.data(), k);
      const std::span<const LeaderObservation> longer(obs.data(), k + 1);
      if (multi_leader_accel(x, vel, longer, p) >
          multi_leader_accel(x, vel, shorter, p)) {
        ++violations;
      }
    }
  }
  v.check(violations == 0, std::to_string(violations) + " violations");
  if (v.pass) v.detail = std::to_string(trials) + " inputs, 0 violations";
  return v;
}

// 9. One engine step vs brute force.
Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> count(2, 5);
  std::uniform_real_distribution<double> spacing(0.5, 60), speed(0, 12),
      lead(-200, 980);
  const oracle::Constants c;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Scenario s;
    s.n_vehicles = count(rng);
    std::vector<InitialState> init;
    double x = lead(rng);
    for (int i = 0; i < s.n_vehicles; ++i) {
      init.push_back({x, speed(rng)});
      x -= c.l + spacing(rng);
    }
    s.initial = init;
    std::vector<double> xs, vs;
    for (const auto& i : init) {
      xs.push_back(i.x);
      vs.push_back(i.v);
    }
    oracle::advance(c, xs, vs, s.comm_range, s.road_length, s.dt);
    const auto next = step(initial_states(s), s, 0).next;
    for (int i = 0; i < s.n_vehicles; ++i) {
      worst = std::max({worst, std::abs(next[i].x - xs[i]),
                        std::abs(next[i].v - vs[i])});
    }
  }
  v.check(worst < 1e-12, "max difference " + fmt("%.3e", worst));
  if (v.pass) v.detail = "max difference " + fmt("%.2e", worst);
  return v;
}

// 10. Determinism and dt refinement.
Verdict determinism_and_refinement() {
  Verdict v;
  for (const char* name : {"baseline.json", "multi_vehicle_attack.json"}) {
    const auto doc = load(name);
    const auto a = run(doc.scenario);
    const auto b = run(doc.scenario);
    const bool same =
        write_trajectory_csv(a.log) == write_trajectory_csv(b.log) &&
        summary_to_json(summarize(a.log, a.collisions, doc.checkpoint)) ==
            summary_to_json(summarize(b.log, b.collisions, doc.checkpoint)) &&
        render_timeseries_svg(a.log, a.collisions) ==
            render_timeseries_svg(b.log, b.collisions);
    v.check(same, std::string(name) + " outputs differ between runs");
  }
  auto coarse = load("baseline.json").scenario;
  auto fine = coarse;
  coarse.dt = 0.1;
  fine.dt = 0.05;
  const auto a = run(coarse).final_states;
  const auto b = run(fine).final_states;
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i].x - b[i].x) / std::abs(b[i].x));
  }
  v.check(worst < 0.01, "max relative change " + fmt("%.4f", worst));
  if (v.pass) v.detail = "byte-identical; max relative change " + fmt("%.2e", worst);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria =
      {{"baseline: no collisions, cruise in [9.5, 10] m/s, leader slows "
        "monotonically, < 1 s",
        baseline_cruise},
       {"spacing attack (+80 m on 5) collides 5->4 inside [10, 85) s",
        spacing_attack},
       {"velocity attack (x0.1 on 5) collision-free, vehicle 6 delayed",
        velocity_attack},
       {"identity attack (drop leaders on 5) collides 5->4 inside [10, 80) s",
        identity_attack},
       {"acceleration attack (-2 on 5) collision-free, delay > velocity "
        "attack",
        acceleration_attack},
       {"multi-vehicle attack: >= 2 collisions incl. 8->7 within 10 s",
        multi_vehicle_attack},
       {"equilibrium fixpoint residual < 1e-9", equilibrium_fixpoint},
       {"multi-leader min-dominance and prefix monotonicity",
        multi_leader_properties},
       {"engine step matches brute-force oracle < 1e-12", oracle_equivalence},
       {"determinism and dt refinement < 1%", determinism_and_refinement}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict verdict;
    try {
      verdict = criteria[i].second();
    } catch (const std::exception& e) {
      verdict = {false, std::string("exception: ") + e.what()};
    }
    if (!verdict.pass) ++failures;
    std::printf("[%s] %2zu. %s%s%s\n", verdict.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, verdict.detail.empty() ? "" : " -- ",
                verdict.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
