#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "platoon/scenario_io.h"

namespace platoon {
namespace {

constexpr double kWidth = 960.0;
constexpr double kPanelHeight = 200.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 130.0;  // legend column
constexpr double kTop = 30.0;
constexpr double kPanelGap = 50.0;
constexpr std::size_t kMaxPointsPerSeries = 1000;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // 5% margin; a degenerate range is widened so it still has extent.
  Range padded() const {
    double a = lo, b = hi;
    if (!(b > a)) {
      const double half = std::max(1.0, 0.05 * std::abs(a));
      a -= half;
      b += half;
    }
    const double margin = 0.05 * (b - a);
    return {a - margin, b + margin};
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Panel {
  const char* title;
  std::function<double(const TrajectoryLog&, std::size_t tick,
                       std::size_t column)>
      value;
};

}  // namespace

std::string render_timeseries_svg(const TrajectoryLog& log,
                                  std::span<const CollisionEvent> events) {
  const std::size_t ticks = log.tick_count();
  if (ticks == 0) {
    throw std::invalid_argument("render_timeseries_svg: empty log");
  }
  const std::size_t vehicles = log.vehicles.size();

  const std::array<Panel, 4> panels = {{
      {"Position (m)",
       [](const TrajectoryLog& l, std::size_t k, std::size_t c) {
         return l.tick(k)[c].x;
       }},
      {"Velocity (m/s)",
       [](const TrajectoryLog& l, std::size_t k, std::size_t c) {
         return l.tick(k)[c].v;
       }},
      {"Acceleration (m/s^2)",
       [](const TrajectoryLog& l, std::size_t k, std::size_t c) {
         return l.tick(k)[c].accel;
       }},
      {"Gap to leading vehicle (m)",
       [](const TrajectoryLog& l, std::size_t k, std::size_t c) {
         const auto& r = l.tick(k)[c];
         return r.gap ? *r.gap : l.road_length - r.x;
       }},
  }};

  const std::size_t stride =
      std::max<std::size_t>(1, (ticks + kMaxPointsPerSeries - 1) /
                                   kMaxPointsPerSeries);
  std::vector<std::size_t> samples;
  for (std::size_t k = 0; k < ticks; k += stride) samples.push_back(k);
  if (samples.back() != ticks - 1) samples.push_back(ticks - 1);

  Range time;
  time.include(log.tick(0)[0].t);
  time.include(log.tick(ticks - 1)[0].t);
  time = time.padded();

  const double plot_width = kWidth - kLeft - kRight;
  const double height =
      kTop + panels.size() * (kPanelHeight + kPanelGap) + 10.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" +
         num(height) + "\" fill=\"white\"/>\n";

  const auto sx = [&](double t) {
    return kLeft + (t - time.lo) / (time.hi - time.lo) * plot_width;
  };

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const double top = kTop + p * (kPanelHeight + kPanelGap);
    Range range;
    for (std::size_t k = 0; k < ticks; ++k) {
      for (std::size_t c = 0; c < vehicles; ++c) {
        range.include(panel.value(log, k, c));
      }
    }
    range = range.padded();
    const auto sy = [&](double v) {
      return top + kPanelHeight -
             (v - range.lo) / (range.hi - range.lo) * kPanelHeight;
    };

    out += "<g class=\"panel\">\n";
    out += "<text x=\"" + num(kLeft) + "\" y=\"" + num(top - 8) + "\">" +
           panel.title + "</text>\n";
    out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(top) + "\" width=\"" +
           num(plot_width) + "\" height=\"" + num(kPanelHeight) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double v = range.lo + (range.hi - range.lo) * i / 4.0;
      out += "<text x=\"" + num(kLeft - 4) + "\" y=\"" + num(sy(v) + 4) +
             "\" text-anchor=\"end\">" + label(v) + "</text>\n";
      const double t = time.lo + (time.hi - time.lo) * i / 4.0;
      out += "<text x=\"" + num(sx(t)) + "\" y=\"" +
             num(top + kPanelHeight + 14) + "\" text-anchor=\"middle\">" +
             label(t) + "</text>\n";
    }
    for (std::size_t c = 0; c < vehicles; ++c) {
      out += "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"";
      out += kPalette[c % kPalette.size()];
      out += "\" points=\"";
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t k = samples[i];
        if (i) out += ' ';
        out += num(sx(log.tick(k)[c].t)) + "," + num(sy(panel.value(log, k, c)));
      }
      out += "\"/>\n";
    }
    if (p == 0) {
      for (const auto& e : events) {
        const auto it =
            std::find(log.vehicles.begin(), log.vehicles.end(), e.follower);
        if (it == log.vehicles.end()) continue;
        const auto c = static_cast<std::size_t>(it - log.vehicles.begin());
        // Position at the nearest logged tick to the event.
        std::size_t k = static_cast<std::size_t>(
            std::llround((e.t - log.tick(0)[0].t) / log.dt));
        k = std::min(k, ticks - 1);
        out += "<circle class=\"collision\" cx=\"" + num(sx(e.t)) +
               "\" cy=\"" + num(sy(log.tick(k)[c].x)) +
               "\" r=\"6\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
      }
    }
    out += "</g>\n";
  }

  out += "<text x=\"" + num(kLeft + plot_width / 2) + "\" y=\"" +
         num(height - 4) + "\" text-anchor=\"middle\">Time (s)</text>\n";
  out += "<g class=\"legend\">\n";
  for (std::size_t c = 0; c < vehicles; ++c) {
    const double y = kTop + 10 + 16.0 * c;
    const double x = kWidth - kRight + 15;
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(x + 20) + "\" y2=\"" + num(y) + "\" stroke=\"" +
           kPalette[c % kPalette.size()] + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + num(x + 26) + "\" y=\"" + num(y + 4) +
           "\">Vehicle " + to_string(log.vehicles[c]) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace platoon
