#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace platoon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCollision = 2;

struct Options {
  std::filesystem::path out_dir = ".";
  bool plot = false;
  std::optional<double> checkpoint;  // overrides the scenario file
  bool force = false;                // overwrite existing outputs
};

/// Writes trajectory.csv, summary.json and (with plot) figure.svg.
int cmd_run(const std::filesystem::path& scenario, const Options& options,
            std::ostream& out, std::ostream& err);

/// Runs both scenarios and writes baseline_trajectory.csv,
/// attacked_trajectory.csv, a summary.json with per-vehicle delays, and
/// (with plot) baseline_figure.svg / attacked_figure.svg.
int cmd_compare(const std::filesystem::path& baseline,
                const std::filesystem::path& attacked, const Options& options,
                std::ostream& out, std::ostream& err);

}  // namespace platoon::cli
