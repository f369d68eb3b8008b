#pragma once

#include <span>
#include <string>
#include <string_view>

#include "platoon/engine.h"
#include "platoon/metrics.h"

namespace platoon {

/// A scenario file: the scenario itself plus metric and output settings.
struct ScenarioDocument {
  Scenario scenario;
  double checkpoint = kDefaultCheckpoint;
  bool plot = false;

  bool operator==(const ScenarioDocument&) const = default;
};

/// Parses and validates a JSON scenario document. Omitted keys take their
/// defaults; unknown keys are rejected. Throws ConfigError.
ScenarioDocument parse_scenario_document(std::string_view text);
Scenario parse_scenario(std::string_view text);

/// Writes every field explicitly (defaults expanded) so that
/// parse_scenario_document(write_scenario(doc)) == doc.
std::string write_scenario(const ScenarioDocument& doc);

/// Header `t,id,x,v,a,gap`, one row per (tick, vehicle), 6 significant
/// digits, empty gap for the platoon leader.
std::string write_trajectory_csv(const TrajectoryLog& log);

/// Inverse of write_trajectory_csv up to rendering precision. road_length is
/// not stored in the CSV and keeps its default. Throws std::invalid_argument
/// on malformed input.
TrajectoryLog read_trajectory_csv(std::string_view text);

std::string summary_to_json(const RunSummary& summary);

/// Four stacked panels against time: position, velocity, acceleration and
/// gap. One polyline per vehicle; the platoon leader's gap is its distance
/// to the road end. Collisions are marked on the position panel. Throws
/// std::invalid_argument on an empty log.
std::string render_timeseries_svg(const TrajectoryLog& log,
                                  std::span<const CollisionEvent> events);

}  // namespace platoon
