#include "platoon/idm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace platoon {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("params.") + name +
                                ": must be a finite value > 0 (got " +
                                std::to_string(value) + ")");
  }
}

}  // namespace

void validate(const IdmParams& p) {
  require_positive(p.v0, "v0");
  require_positive(p.s0, "s0");
  require_positive(p.a, "a");
  require_positive(p.b, "b");
  require_positive(p.T, "T");
  if (!(p.delta >= 1.0) || !std::isfinite(p.delta)) {
    throw std::invalid_argument("params.delta: must be >= 1 (got " +
                                std::to_string(p.delta) + ")");
  }
  require_positive(p.length, "l");
}

double desired_gap(double v, double dv, const IdmParams& p) {
  return p.s0 + p.T * v + v * dv / (2.0 * std::sqrt(p.a * p.b));
}

double free_road_accel(double v, const IdmParams& p) {
  return p.a * (1.0 - std::pow(v / p.v0, p.delta));
}

double idm_accel(double v, double dv, double gap, const IdmParams& p) {
  if (!(gap > 0.0)) {
    throw std::domain_error("idm_accel: non-positive gap " +
                            std::to_string(gap));
  }
  const double interaction = desired_gap(v, dv, p) / gap;
  return free_road_accel(v, p) - p.a * interaction * interaction;
}

double multi_leader_accel(double subject_x, double subject_v,
                          std::span<const LeaderObservation> observations,
                          const IdmParams& p) {
  if (observations.empty()) return free_road_accel(subject_v, p);
  double result = std::numeric_limits<double>::infinity();
  for (const auto& obs : observations) {
    const double gap = obs.position - subject_x - p.length;
    const double dv = subject_v - obs.velocity;
    result = std::min(result, idm_accel(subject_v, dv, gap, p));
  }
  return result;
}

double equilibrium_gap(double v, const IdmParams& p) {
  if (!(v > 0.0) || !(v < p.v0)) {
    throw std::domain_error("equilibrium_gap: speed " + std::to_string(v) +
                            " outside (0, v0)");
  }
  return desired_gap(v, 0.0, p) / std::sqrt(1.0 - std::pow(v / p.v0, p.delta));
}

}  // namespace platoon
