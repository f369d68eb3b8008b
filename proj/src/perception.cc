#include "platoon/perception.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace platoon {

bool Attack::targets_vehicle(VehicleId id) const {
  return std::find(targets.begin(), targets.end(), id) != targets.end();
}

void validate(const Attack& attack) {
  if (!(attack.duration > 0.0)) {
    throw std::invalid_argument("attack duration must be > 0 (got " +
                                std::to_string(attack.duration) + ")");
  }
  if (!(attack.start >= 0.0) || !std::isfinite(attack.start)) {
    throw std::invalid_argument("attack start must be >= 0 (got " +
                                std::to_string(attack.start) + ")");
  }
  if (attack.targets.empty()) {
    throw std::invalid_argument("attack targets must be non-empty");
  }
  if (const auto* scale = std::get_if<VelocityScale>(&attack.kind)) {
    if (!(scale->k >= 0.0) || !std::isfinite(scale->k)) {
      throw std::invalid_argument("velocity_scale k must be >= 0 (got " +
                                  std::to_string(scale->k) + ")");
    }
  }
}

bool attack_active(const Attack& attack, double t) {
  return attack.start <= t && t < attack.start + attack.duration;
}

bool perception_attacked(VehicleId subject, std::span<const Attack> attacks,
                         double t) {
  return std::any_of(attacks.begin(), attacks.end(), [&](const Attack& a) {
    return a.acts_on_perception() && a.targets_vehicle(subject) &&
           attack_active(a, t);
  });
}

PerceptionFrame build_perception(std::span<const VehicleState> states,
                                 VehicleId subject, int comm_range,
                                 double road_end, double vehicle_length) {
  const auto it = std::find_if(
      states.begin(), states.end(),
      [subject](const VehicleState& s) { return s.id == subject; });
  if (it == states.end()) {
    throw std::invalid_argument("build_perception: unknown vehicle " +
                                to_string(subject));
  }
  const auto index = static_cast<std::ptrdiff_t>(it - states.begin());

  PerceptionFrame frame{subject, {}};
  const std::ptrdiff_t seen = std::min<std::ptrdiff_t>(comm_range, index);
  frame.observations.reserve(static_cast<std::size_t>(seen) + 1);
  for (std::ptrdiff_t k = 1; k <= seen; ++k) {
    const auto& leader = states[static_cast<std::size_t>(index - k)];
    frame.observations.push_back({leader.x, leader.v});
  }
  if (seen == index) {
    frame.observations.push_back({road_end + vehicle_length, 0.0});
  }
  return frame;
}

PerceptionFrame apply_perception_attacks(PerceptionFrame frame,
                                         std::span<const Attack> attacks,
                                         double t) {
  bool touched = false;
  for (const auto& attack : attacks) {
    if (!attack.targets_vehicle(frame.subject) || !attack_active(attack, t)) {
      continue;
    }
    auto& obs = frame.observations;
    std::visit(
        [&](const auto& kind) {
          using K = std::decay_t<decltype(kind)>;
          if constexpr (std::is_same_v<K, PositionOffset>) {
            for (auto& o : obs) o.position += kind.dx;
            touched = true;
          } else if constexpr (std::is_same_v<K, VelocityScale>) {
            for (auto& o : obs) o.velocity *= kind.k;
          } else if constexpr (std::is_same_v<K, DropLeaders>) {
            obs.clear();
          }
        },
        attack.kind);
  }
  if (touched) {
    std::stable_sort(frame.observations.begin(), frame.observations.end(),
                     [](const LeaderObservation& a, const LeaderObservation& b) {
                       return a.position < b.position;
                     });
  }
  return frame;
}

double apply_actuation_attack(double accel, VehicleId subject,
                              std::span<const Attack> attacks, double t) {
  for (const auto& attack : attacks) {
    const auto* force = std::get_if<ForceAcceleration>(&attack.kind);
    if (force && attack.targets_vehicle(subject) && attack_active(attack, t)) {
      accel = force->af;
    }
  }
  return accel;
}

}  // namespace platoon
