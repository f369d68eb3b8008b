#include "platoon/cli.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "platoon/engine.h"
#include "platoon/metrics.h"
#include "platoon/scenario_io.h"

namespace platoon::cli {
namespace {

namespace fs = std::filesystem;

// Anything that should end the command with kExitError.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ScenarioDocument load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario_document(text.str());
  } catch (const ConfigError& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

double resolve_checkpoint(const Options& options, const ScenarioDocument& doc) {
  const double checkpoint = options.checkpoint.value_or(doc.checkpoint);
  if (!(checkpoint >= 0.0 && checkpoint <= doc.scenario.road_length)) {
    throw UsageError("--checkpoint: must lie within [0, road_length] (got " +
                     std::to_string(checkpoint) + ")");
  }
  return checkpoint;
}

// Output files are written in one batch after checking that none would be
// clobbered without --force.
class OutputSet {
 public:
  OutputSet(fs::path dir, bool force) : dir_(std::move(dir)), force_(force) {}

  void add(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }

  void write() const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
      throw UsageError("cannot create output directory " + dir_.string() +
                       ": " + ec.message());
    }
    if (!force_) {
      for (const auto& [name, _] : files_) {
        if (fs::exists(dir_ / name)) {
          throw UsageError((dir_ / name).string() +
                           " already exists (use --force to overwrite)");
        }
      }
    }
    for (const auto& [name, content] : files_) {
      std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
      out << content;
      if (!out) throw UsageError("failed to write " + (dir_ / name).string());
    }
  }

 private:
  fs::path dir_;
  bool force_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string format_delay(const RunSummary& summary) {
  if (!summary.delays || summary.delays->empty()) return "n/a";
  double worst = 0.0;
  bool first = true;
  for (const auto& [_, d] : *summary.delays) {
    if (first || d > worst) worst = d;
    first = false;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", worst);
  return buf;
}

std::string one_line(const RunSummary& summary) {
  const auto arrived = std::count_if(
      summary.arrivals.begin(), summary.arrivals.end(),
      [](const auto& entry) { return entry.second.has_value(); });
  return "collisions=" + std::to_string(summary.collisions.size()) +
         " max_delay=" + format_delay(summary) +
         " arrivals=" + std::to_string(arrived) + "/" +
         std::to_string(summary.arrivals.size());
}

template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace

int cmd_run(const fs::path& scenario, const Options& options, std::ostream& out,
            std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load(scenario);
    const double checkpoint = resolve_checkpoint(options, doc);
    const auto result = run(doc.scenario);
    const auto summary = summarize(result.log, result.collisions, checkpoint);

    OutputSet files(options.out_dir, options.force);
    files.add("trajectory.csv", write_trajectory_csv(result.log));
    files.add("summary.json", summary_to_json(summary));
    if (options.plot || doc.plot) {
      files.add("figure.svg",
                render_timeseries_svg(result.log, result.collisions));
    }
    files.write();

    out << one_line(summary) << "\n";
    return summary.collisions.empty() ? kExitOk : kExitCollision;
  });
}

int cmd_compare(const fs::path& baseline, const fs::path& attacked,
                const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto base_doc = load(baseline);
    const auto attack_doc = load(attacked);
    const auto& b = base_doc.scenario;
    const auto& a = attack_doc.scenario;
    if (b.n_vehicles != a.n_vehicles || b.params != a.params || b.dt != a.dt) {
      throw UsageError(
          "scenarios describe different platoons (n_vehicles, params and dt "
          "must match)");
    }
    const double checkpoint = resolve_checkpoint(options, attack_doc);
    if (checkpoint > b.road_length) {
      throw UsageError("checkpoint lies beyond the baseline road");
    }

    auto base_future = std::async(std::launch::async, [&] { return run(b); });
    const auto attack_result = run(a);
    const auto base_result = base_future.get();
    const auto summary = summarize(attack_result.log, attack_result.collisions,
                                   checkpoint, base_result.log);

    OutputSet files(options.out_dir, options.force);
    files.add("baseline_trajectory.csv", write_trajectory_csv(base_result.log));
    files.add("attacked_trajectory.csv",
              write_trajectory_csv(attack_result.log));
    files.add("summary.json", summary_to_json(summary));
    if (options.plot || attack_doc.plot) {
      files.add("baseline_figure.svg",
                render_timeseries_svg(base_result.log, base_result.collisions));
      files.add("attacked_figure.svg",
                render_timeseries_svg(attack_result.log,
                                      attack_result.collisions));
    }
    files.write();

    out << one_line(summary) << "\n";
    return summary.collisions.empty() ? kExitOk : kExitCollision;
  });
}

}  // namespace platoon::cli
