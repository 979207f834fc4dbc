#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace flqkd::cli {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 180, kTop = 40, kBottom = 60;
constexpr const char* kColours[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                    "#66a61e", "#e6ab02", "#a6761d", "#666666"};

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;

  double map(double v, double px_lo, double px_hi) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return px_lo + (x - a) / (b - a) * (px_hi - px_lo);
  }
};

bool drawable(double v, bool log) { return std::isfinite(v) && (!log || v > 0); }

Axis fit_axis(const std::vector<std::vector<double>>& series, bool log) {
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series) {
    for (double v : s) {
      if (!drawable(v, log)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo)) lo = log ? 1e-3 : 0.0, hi = 1.0;
  if (hi <= lo) hi = log ? lo * 10 : lo + 1;
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::string render_svg(const Table& table, const PlotSpec& spec) {
  const auto xs = table.numeric_column(spec.x_column);
  std::vector<std::vector<double>> ys;
  for (const auto& name : spec.y_columns) ys.push_back(table.numeric_column(name));

  const Axis xa = fit_axis({xs}, spec.log_x);
  const Axis ya = fit_axis(ys, spec.log_y);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << spec.title << "</text>\n";
  svg << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double f = i / 4.0;
    const double xv = xa.log ? std::pow(10, std::log10(xa.lo) + f * (std::log10(xa.hi) - std::log10(xa.lo)))
                             : xa.lo + f * (xa.hi - xa.lo);
    const double yv = ya.log ? std::pow(10, std::log10(ya.lo) + f * (std::log10(ya.hi) - std::log10(ya.lo)))
                             : ya.lo + f * (ya.hi - ya.lo);
    const double px = x0 + f * (x1 - x0);
    const double py = y0 + f * (y1 - y0);
    svg << "<text x=\"" << px << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    svg << "<text x=\"" << x0 - 6 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
  }
  svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">"
      << spec.x_label << "</text>\n";
  svg << "<text transform=\"translate(20," << (y0 + y1) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << spec.y_label << "</text>\n";

  for (std::size_t s = 0; s < ys.size(); ++s) {
    const char* colour = kColours[s % std::size(kColours)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!drawable(xs[i], xa.log) || !drawable(ys[s][i], ya.log)) continue;
      const double py = std::clamp(ya.map(ys[s][i], y0, y1), y1, y0);
      svg << xa.map(xs[i], x0, x1) << ',' << py << ' ';
    }
    svg << "\"/>\n";
    const double ly = y1 + 16 + 18 * static_cast<double>(s);
    svg << "<line x1=\"" << x1 + 12 << "\" y1=\"" << ly << "\" x2=\"" << x1 + 36 << "\" y2=\"" << ly
        << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << x1 + 42 << "\" y=\"" << ly + 4 << "\">" << spec.y_columns[s] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace flqkd::cli
