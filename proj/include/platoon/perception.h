#pragma once

#include <limits>
#include <span>
#include <variant>
#include <vector>

#include "platoon/idm.h"
#include "platoon/vehicle.h"

namespace platoon {

// Attack payloads. The first three corrupt what the target perceives; the
// last overrides the acceleration it computed.
struct PositionOffset {
  double dx = 0.0;  // m, added to every observed position
  bool operator==(const PositionOffset&) const = default;
};
struct VelocityScale {
  double k = 1.0;  // observed velocities are multiplied by k
  bool operator==(const VelocityScale&) const = default;
};
struct DropLeaders {
  bool operator==(const DropLeaders&) const = default;
};
struct ForceAcceleration {
  double af = 0.0;  // m/s^2
  bool operator==(const ForceAcceleration&) const = default;
};

using AttackKind =
    std::variant<PositionOffset, VelocityScale, DropLeaders, ForceAcceleration>;

struct Attack {
  AttackKind kind;
  std::vector<VehicleId> targets;
  double start = 0.0;  // s
  double duration = std::numeric_limits<double>::infinity();  // s

  bool targets_vehicle(VehicleId id) const;
  bool acts_on_perception() const {
    return !std::holds_alternative<ForceAcceleration>(kind);
  }
  bool operator==(const Attack&) const = default;
};

/// Throws std::invalid_argument on a non-positive duration, negative start,
/// empty target set or negative velocity scale.
void validate(const Attack& attack);

struct PerceptionFrame {
  VehicleId subject;
  /// Nearest first.
  std::vector<LeaderObservation> observations;

  bool operator==(const PerceptionFrame&) const = default;
};

/// Active on the half-open window [start, start + duration).
bool attack_active(const Attack& attack, double t);

/// True if some perception attack targeting `subject` is active at t.
bool perception_attacked(VehicleId subject, std::span<const Attack> attacks,
                         double t);

/// Ground-truth frame for `subject`. `states` must be in platoon order
/// (index 0 is the platoon leader, positions decreasing). The frame holds up
/// to `comm_range` vehicles ahead, nearest first; when the platoon leader is
/// among them the road-end obstacle (stationary, at road_end + length) is
/// appended, so the platoon leader itself sees only the obstacle.
/// Throws std::invalid_argument for an unknown subject.
PerceptionFrame build_perception(std::span<const VehicleState> states,
                                 VehicleId subject, int comm_range,
                                 double road_end, double vehicle_length);

PerceptionFrame apply_perception_attacks(PerceptionFrame frame,
                                         std::span<const Attack> attacks,
                                         double t);

/// Last active ForceAcceleration targeting `subject` wins.
double apply_actuation_attack(double accel, VehicleId subject,
                              std::span<const Attack> attacks, double t);

}  // namespace platoon
