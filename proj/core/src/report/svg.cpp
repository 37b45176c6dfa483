#include "gameqd/report/svg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace gameqd {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr double kSize = 480.0;
constexpr double kMargin = 40.0;

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(double w, double h, std::string_view title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2:.1f}\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\" "
      "text-anchor=\"middle\">{3}</text>\n",
      w, h, w / 2, escape(title));
}

}  // namespace

std::string render_trajectory_svg(const Trajectory& t, const EnvSpec& spec, std::string_view title) {
  double x0 = spec.raster.min_x;
  double x1 = spec.raster.max_x;
  double y0 = spec.raster.min_y;
  double y1 = spec.raster.max_y;
  for (const auto& p : t.positions) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double span = std::max(x1 - x0, y1 - y0);
  const double scale = (kSize - 2 * kMargin) / (span > 0 ? span : 1.0);
  const auto sx = [&](double x) { return kMargin + (x - x0) * scale; };
  const auto sy = [&](double y) { return kSize - kMargin - (y - y0) * scale; };

  std::string out = header(kSize, kSize, title);
  out += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"#999\"/>\n",
      sx(spec.raster.min_x), sy(spec.raster.max_y), (spec.raster.max_x - spec.raster.min_x) * scale,
      (spec.raster.max_y - spec.raster.min_y) * scale);

  const bool pong = spec.id == EnvId::kPong;
  const std::size_t entities = t.entity_count();
  for (std::size_t e = 0; e < entities; ++e) {
    // Pong paddles are context for the ball trail and drawn faintly.
    const bool faint = pong && e != 0;
    std::size_t next_event = 0;
    std::size_t segment = 0;
    out += fmt::format("<g id=\"{}\" opacity=\"{}\">\n", escape(t.roles[e]), faint ? "0.25" : "0.8");
    for (int s = 0; s < t.steps; ++s) {
      if (pong && e == 0) {
        while (next_event < t.events.size() && t.events[next_event].step <= s) {
          if (t.events[next_event].kind == EventKind::kPoint) ++segment;
          ++next_event;
        }
      }
      const char* colour = kPalette[(pong && e == 0 ? segment : e) % std::size(kPalette)];
      const Vec2 p = t.at(s, e);
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.5\" fill=\"{}\"/>\n", sx(p.x),
                         sy(p.y), colour);
    }
    out += "</g>\n";
  }
  for (std::size_t e = 0; e < entities; ++e) {
    out += fmt::format(
        "<text x=\"{:.0f}\" y=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"11\" "
        "fill=\"{}\">{}</text>\n",
        kMargin + 90.0 * static_cast<double>(e), kSize - 12.0, kPalette[e % std::size(kPalette)],
        escape(t.roles[e]));
  }
  out += "</svg>\n";
  return out;
}

std::string render_curves_svg(const std::vector<CurveSeries>& series, std::string_view title,
                              std::string_view y_label) {
  std::size_t n = 1;
  double y_max = 1.0;
  for (const auto& s : series) {
    n = std::max(n, s.values.size());
    for (double v : s.values) y_max = std::max(y_max, v);
  }
  const double w = kSize + 160.0;
  const double plot_w = kSize - 2 * kMargin;
  const double plot_h = kSize - 2 * kMargin;
  const auto sx = [&](std::size_t i) {
    return kMargin + (n > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(n - 1) : plot_w / 2);
  };
  const auto sy = [&](double v) { return kSize - kMargin - plot_h * v / y_max; };

  std::string out = header(w, kSize, title);
  out += fmt::format(
      "<line x1=\"{0:.0f}\" y1=\"{1:.0f}\" x2=\"{2:.0f}\" y2=\"{1:.0f}\" stroke=\"black\"/>\n"
      "<line x1=\"{0:.0f}\" y1=\"{1:.0f}\" x2=\"{0:.0f}\" y2=\"{3:.0f}\" stroke=\"black\"/>\n",
      kMargin, kSize - kMargin, kSize - kMargin, kMargin);
  out += fmt::format(
      "<text x=\"12\" y=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"11\" "
      "transform=\"rotate(-90 12 {:.0f})\" text-anchor=\"middle\">{}</text>\n",
      kSize / 2, kSize / 2, escape(y_label));
  out += fmt::format(
      "<text x=\"{:.0f}\" y=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"11\" "
      "text-anchor=\"end\">{:g}</text>\n",
      kMargin - 4, kMargin + 4, y_max);
  for (std::size_t i = 0; i < n; ++i) {
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"middle\">{}</text>\n",
        sx(i), kSize - kMargin + 16, i + 1);
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* colour = kPalette[k % std::size(kPalette)];
    std::string points;
    for (std::size_t i = 0; i < series[k].values.size(); ++i) {
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", sx(i), sy(series[k].values[i]));
    }
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                       points, colour);
    out += fmt::format(
        "<text x=\"{:.0f}\" y=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"11\" "
        "fill=\"{}\">{}</text>\n",
        kSize + 4, kMargin + 14.0 * static_cast<double>(k), colour, escape(series[k].label));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace gameqd
