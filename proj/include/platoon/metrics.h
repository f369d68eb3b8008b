#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "platoon/engine.h"

namespace platoon {

inline constexpr double kDefaultCheckpoint = 600.0;  // m

struct RunSummary {
  std::vector<CollisionEvent> collisions;
  double checkpoint = kDefaultCheckpoint;
  /// Every vehicle in the log; nullopt if it never reached the checkpoint.
  std::map<VehicleId, std::optional<double>> arrivals;
  /// Only with a baseline: attacked minus baseline arrival, for vehicles
  /// that arrived in both runs.
  std::optional<std::map<VehicleId, double>> delays;
};

/// First time the vehicle's position reaches `checkpoint`, linearly
/// interpolated between the straddling ticks. Throws std::invalid_argument
/// if the vehicle is not in the log.
std::optional<double> arrival_time(const TrajectoryLog& log, VehicleId vehicle,
                                   double checkpoint);

std::optional<double> travel_delay(const TrajectoryLog& baseline,
                                   const TrajectoryLog& attacked,
                                   VehicleId vehicle, double checkpoint);

RunSummary summarize(const TrajectoryLog& log,
                     std::span<const CollisionEvent> events,
                     double checkpoint);

RunSummary summarize(const TrajectoryLog& log,
                     std::span<const CollisionEvent> events, double checkpoint,
                     const TrajectoryLog& baseline);

}  // namespace platoon
