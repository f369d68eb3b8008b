#pragma once

#include <compare>
#include <string>

namespace platoon {

/// Platoon index; 1 is the platoon leader, ids grow toward the tail.
struct VehicleId {
  int value = 0;
  auto operator<=>(const VehicleId&) const = default;
};

inline std::string to_string(VehicleId id) { return std::to_string(id.value); }

struct VehicleState {
  VehicleId id;
  double x = 0.0;           // m
  double v = 0.0;           // m/s, never negative
  double last_accel = 0.0;  // m/s^2 applied over the last step
  bool frozen = false;      // pinned after a collision (freeze policy)

  bool operator==(const VehicleState&) const = default;
};

}  // namespace platoon
