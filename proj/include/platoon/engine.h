#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "platoon/idm.h"
#include "platoon/perception.h"
#include "platoon/vehicle.h"

namespace platoon {

/// A scenario failed to parse or validate. The message names the offending
/// key and value.
class ConfigError : public std::invalid_argument {
 public:
  enum class Kind { kSyntax, kUnknownKey, kType, kOutOfRange, kOverlap };

  ConfigError(Kind kind, const std::string& message)
      : std::invalid_argument(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class CollisionPolicy { kHalt, kFreeze };

struct InitialState {
  double x = 0.0;
  double v = 0.0;
  bool operator==(const InitialState&) const = default;
};

struct Scenario {
  double road_length = 1000.0;
  int n_vehicles = 9;
  IdmParams params;
  int comm_range = 3;
  double dt = 0.1;
  double t_end = 200.0;
  /// Absent: vehicle n starts at rest at -(n - 1) (length + 10).
  std::optional<std::vector<InitialState>> initial;
  std::vector<Attack> attacks;
  CollisionPolicy collision_policy = CollisionPolicy::kHalt;

  bool operator==(const Scenario&) const = default;
};

/// Throws ConfigError.
void validate(const Scenario& scenario);

/// States at t = 0 in platoon order.
std::vector<VehicleState> initial_states(const Scenario& scenario);

struct CollisionEvent {
  double t = 0.0;
  VehicleId follower;
  VehicleId leader;
  double gap = 0.0;  // <= 0

  bool operator==(const CollisionEvent&) const = default;
};

struct TrajectoryRecord {
  double t = 0.0;
  VehicleId id;
  double x = 0.0;
  double v = 0.0;
  /// Acceleration applied over [t, t + dt); the terminal tick repeats the
  /// last applied value.
  double accel = 0.0;
  /// Physical gap to the vehicle ahead; empty for the platoon leader.
  std::optional<double> gap;

  bool operator==(const TrajectoryRecord&) const = default;
};

/// Tick-major: records [k * n, (k + 1) * n) belong to tick k.
struct TrajectoryLog {
  double dt = 0.1;
  double road_length = 1000.0;
  std::vector<VehicleId> vehicles;
  std::vector<TrajectoryRecord> records;

  std::size_t tick_count() const {
    return vehicles.empty() ? 0 : records.size() / vehicles.size();
  }
  std::span<const TrajectoryRecord> tick(std::size_t k) const {
    return std::span(records).subspan(k * vehicles.size(), vehicles.size());
  }
};

struct StepResult {
  std::vector<VehicleState> next;
  std::vector<CollisionEvent> collisions;
};

/// Gaps below this are what an attacked vehicle believes when its corrupted
/// frame places a leader on or behind its own bumper.
inline constexpr double kMinPerceivedGap = 1e-3;

/// Every adjacent pair (in the given platoon order) whose physical gap is
/// <= 0.
std::vector<CollisionEvent> detect_collisions(
    std::span<const VehicleState> states, double vehicle_length, double t);

/// One synchronous update from t to t + dt. All accelerations are computed
/// from `states` before any state is advanced; frozen vehicles stay put.
/// v' = max(0, v + a dt), x' = x + (v + v') dt / 2.
StepResult step(std::span<const VehicleState> states, const Scenario& scenario,
                double t);

struct RunResult {
  TrajectoryLog log;
  std::vector<CollisionEvent> collisions;
  std::vector<VehicleState> final_states;
};

/// Steps from 0 to t_end. Under kHalt the run (and log) ends at the first
/// tick with a collision; under kFreeze the colliding vehicles are pinned at
/// v = 0 and each pair is reported once. Throws ConfigError before stepping
/// if the scenario is invalid.
RunResult run(const Scenario& scenario);

}  // namespace platoon
