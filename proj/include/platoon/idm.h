#pragma once

#include <span>

namespace platoon {

/// Intelligent Driver Model constants. Defaults are the platoon study values
/// (desired speed 10 m/s, 5 m vehicles).
struct IdmParams {
  double v0 = 10.0;     // desired velocity, m/s
  double s0 = 2.0;      // minimum gap, m
  double a = 0.73;      // maximum acceleration, m/s^2
  double b = 1.67;      // comfortable deceleration, m/s^2
  double T = 1.5;       // headway time, s
  double delta = 4.0;   // acceleration exponent
  double length = 5.0;  // vehicle length, m

  bool operator==(const IdmParams&) const = default;
};

/// Throws std::invalid_argument naming the first field out of range.
void validate(const IdmParams& p);

/// What a subject vehicle believes about one vehicle (or obstacle) ahead.
struct LeaderObservation {
  double position = 0.0;  // m
  double velocity = 0.0;  // m/s

  bool operator==(const LeaderObservation&) const = default;
};

/// s*(v, dv) = s0 + T v + v dv / (2 sqrt(a b)), with dv = v - v_leader.
/// Not clamped at s0.
double desired_gap(double v, double dv, const IdmParams& p);

/// a (1 - (v/v0)^delta - (s*/gap)^2). Throws std::domain_error if gap <= 0.
double idm_accel(double v, double dv, double gap, const IdmParams& p);

/// Drive term only: a (1 - (v/v0)^delta).
double free_road_accel(double v, const IdmParams& p);

/// Evaluates the IDM against every observation as if it were the vehicle
/// directly in front and returns the most restrictive (minimum) result.
/// Each gap is position - subject_x - length; intermediate vehicles are not
/// subtracted. An empty list is the free-road case.
double multi_leader_accel(double subject_x, double subject_v,
                          std::span<const LeaderObservation> observations,
                          const IdmParams& p);

/// Gap at which idm_accel(v, 0, gap) == 0. Requires 0 < v < v0.
double equilibrium_gap(double v, const IdmParams& p);

}  // namespace platoon
