#include "platoon/metrics.h"

#include <algorithm>
#include <stdexcept>

namespace platoon {
namespace {

std::size_t column_of(const TrajectoryLog& log, VehicleId vehicle) {
  const auto it = std::find(log.vehicles.begin(), log.vehicles.end(), vehicle);
  if (it == log.vehicles.end()) {
    throw std::invalid_argument("unknown vehicle " + to_string(vehicle));
  }
  return static_cast<std::size_t>(it - log.vehicles.begin());
}

}  // namespace

std::optional<double> arrival_time(const TrajectoryLog& log, VehicleId vehicle,
                                   double checkpoint) {
  const std::size_t column = column_of(log, vehicle);
  const std::size_t ticks = log.tick_count();
  for (std::size_t k = 0; k < ticks; ++k) {
    const auto& now = log.tick(k)[column];
    if (now.x < checkpoint) continue;
    if (k == 0) return now.t;
    const auto& before = log.tick(k - 1)[column];
    const double fraction = (checkpoint - before.x) / (now.x - before.x);
    return before.t + fraction * (now.t - before.t);
  }
  return std::nullopt;
}

std::optional<double> travel_delay(const TrajectoryLog& baseline,
                                   const TrajectoryLog& attacked,
                                   VehicleId vehicle, double checkpoint) {
  const auto base = arrival_time(baseline, vehicle, checkpoint);
  const auto hit = arrival_time(attacked, vehicle, checkpoint);
  if (!base || !hit) return std::nullopt;
  return *hit - *base;
}

RunSummary summarize(const TrajectoryLog& log,
                     std::span<const CollisionEvent> events,
                     double checkpoint) {
  RunSummary summary;
  summary.collisions.assign(events.begin(), events.end());
  summary.checkpoint = checkpoint;
  for (const auto id : log.vehicles) {
    summary.arrivals[id] = arrival_time(log, id, checkpoint);
  }
  return summary;
}

RunSummary summarize(const TrajectoryLog& log,
                     std::span<const CollisionEvent> events, double checkpoint,
                     const TrajectoryLog& baseline) {
  RunSummary summary = summarize(log, events, checkpoint);
  auto& delays = summary.delays.emplace();
  for (const auto& [id, arrival] : summary.arrivals) {
    if (!arrival) continue;
    if (std::find(baseline.vehicles.begin(), baseline.vehicles.end(), id) ==
        baseline.vehicles.end()) {
      continue;
    }
    if (const auto base = arrival_time(baseline, id, checkpoint)) {
      delays[id] = *arrival - *base;
    }
  }
  return summary;
}

}  // namespace platoon
