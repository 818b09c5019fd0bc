#include "bse2/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace bse2 {

namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Roughly `count` round tick values covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int count) {
  const double span = hi - lo;
  const double raw = span / std::max(1, count);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return ticks;
}

struct Frame {
  double left = 70, right = 20, top = 40, bottom = 55;
  double width, height;
  double x0, x1, y0, y1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
  double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

void expand_degenerate(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
}

void draw_axes(std::ostringstream& os, const Frame& f, const PlotOptions& o, bool log_y) {
  os << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\""
     << num(f.width - f.left - f.right) << "\" height=\"" << num(f.height - f.top - f.bottom)
     << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double t : nice_ticks(f.x0, f.x1, 8)) {
    os << "<line x1=\"" << num(f.px(t)) << "\" y1=\"" << num(f.height - f.bottom) << "\" x2=\"" << num(f.px(t))
       << "\" y2=\"" << num(f.top) << "\" stroke=\"#ddd\"/>\n"
       << "<text x=\"" << num(f.px(t)) << "\" y=\"" << num(f.height - f.bottom + 16)
       << "\" font-size=\"11\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  if (log_y) {
    for (double e = std::ceil(f.y0); e <= f.y1; e += 1.0) {
      os << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.py(e)) << "\" x2=\"" << num(f.width - f.right)
         << "\" y2=\"" << num(f.py(e)) << "\" stroke=\"#ddd\"/>\n"
         << "<text x=\"" << num(f.left - 6) << "\" y=\"" << num(f.py(e) + 4)
         << "\" font-size=\"11\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
    }
  } else {
    for (double t : nice_ticks(f.y0, f.y1, 6)) {
      os << "<line x1=\"" << num(f.left) << "\" y1=\"" << num(f.py(t)) << "\" x2=\"" << num(f.width - f.right)
         << "\" y2=\"" << num(f.py(t)) << "\" stroke=\"#ddd\"/>\n"
         << "<text x=\"" << num(f.left - 6) << "\" y=\"" << num(f.py(t) + 4)
         << "\" font-size=\"11\" text-anchor=\"end\">" << num(t) << "</text>\n";
    }
  }
  os << "<text x=\"" << num(f.width / 2) << "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" << escape(o.title)
     << "</text>\n"
     << "<text x=\"" << num((f.left + f.width - f.right) / 2) << "\" y=\"" << num(f.height - 12)
     << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(o.x_label) << "</text>\n"
     << "<text x=\"16\" y=\"" << num((f.top + f.height - f.bottom) / 2)
     << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num((f.top + f.height - f.bottom) / 2) << ")\">" << escape(o.y_label) << "</text>\n";
}

std::string open_svg(int w, int h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(w) + "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
         std::to_string(h) + "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void arrow(std::ostringstream& os, double x, double y, double angle, double len, const char* color, double width,
           bool dashed) {
  const double x2 = x + len * std::cos(angle);
  const double y2 = y - len * std::sin(angle);  // screen y points down
  os << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
     << "\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << "\""
     << (dashed ? " stroke-dasharray=\"4,3\"" : "") << " marker-end=\"url(#head)\"/>\n";
}

}  // namespace

std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& o) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin, min_positive = xmin;
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
      if (s.y[i] > 0.0) min_positive = std::min(min_positive, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  const bool log_y = o.log_y && std::isfinite(min_positive);
  auto ymap = [&](double y) { return log_y ? std::log10(std::max(y, min_positive)) : y; };
  double y0 = log_y ? std::floor(std::log10(min_positive)) : ymin;
  double y1 = log_y ? std::ceil(std::log10(std::max(ymax, min_positive))) : ymax;
  expand_degenerate(xmin, xmax);
  expand_degenerate(y0, y1);
  if (!log_y) {
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
  }

  Frame f;
  f.width = o.width;
  f.height = o.height;
  f.x0 = xmin;
  f.x1 = xmax;
  f.y0 = y0;
  f.y1 = y1;

  std::ostringstream os;
  os << open_svg(o.width, o.height);
  draw_axes(os, f, o, log_y);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[k % kPalette.size()]
       << "\" stroke-width=\"1.3\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      os << num(f.px(s.x[i])) << ',' << num(f.py(ymap(s.y[i]))) << ' ';
    }
    os << "\"/>\n";
  }
  if (o.show_legend) {
    const std::size_t shown = std::min<std::size_t>(series.size(), 12);
    for (std::size_t k = 0; k < shown; ++k) {
      const double ly = f.top + 14 + 14 * static_cast<double>(k);
      const double lx = f.width - f.right - 110;
      os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 18) << "\" y2=\""
         << num(ly - 4) << "\" stroke=\"" << kPalette[k % kPalette.size()] << "\" stroke-width=\"2\"/>\n"
         << "<text x=\"" << num(lx + 22) << "\" y=\"" << num(ly) << "\" font-size=\"11\">"
         << escape(series[k].label) << "</text>\n";
    }
    if (series.size() > shown) {
      os << "<text x=\"" << num(f.width - f.right - 110) << "\" y=\""
         << num(f.top + 14 + 14 * static_cast<double>(shown)) << "\" font-size=\"11\">+" << series.size() - shown
         << " more</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_bearing_error_plot(const TrajectoryTrace& trace, const std::string& title) {
  std::vector<PlotSeries> series(trace.n_edges);
  for (std::size_t k = 0; k < trace.n_edges; ++k) {
    series[k].label = "e_" + std::to_string(k + 1);
    series[k].x = trace.times;
    series[k].y.reserve(trace.size());
    for (const Vector& e : trace.bearing_errors) series[k].y.push_back(e(static_cast<Eigen::Index>(k)));
  }
  PlotOptions o;
  o.title = title;
  o.x_label = "t [s]";
  o.y_label = "bearing error e(t) [rad]";
  return render_line_plot(series, o);
}

std::string render_position_error_plot(const TrajectoryTrace& trace, const std::string& title) {
  PlotOptions o;
  o.title = title;
  o.x_label = "t [s]";
  o.y_label = "e_p(t)";
  o.log_y = true;
  o.show_legend = false;
  return render_line_plot({PlotSeries{"e_p", trace.times, trace.cumulative_position_error}}, o);
}

std::string render_trajectory_plot(const TrajectoryTrace& trace, const EstimatorState& truth,
                                   const std::string& title) {
  const std::size_t n = truth.agent_count();
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto extend = [&](const Vec2& p) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  };
  for (std::size_t i = 0; i < n; ++i) extend(truth.xi(i));
  for (const EstimatorState& s : trace.states)
    for (std::size_t i = 0; i < n; ++i) extend(s.xi(i));
  // Equal aspect with a margin for arrows.
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-6}) * 1.25;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);

  PlotOptions o;
  o.title = title;
  o.x_label = "x (reference-agent frame, unscaled)";
  o.y_label = "y (reference-agent frame, unscaled)";
  o.width = 620;
  o.height = 620;
  Frame f;
  f.width = o.width;
  f.height = o.height;
  f.x0 = cx - span / 2;
  f.x1 = cx + span / 2;
  f.y0 = cy - span / 2;
  f.y1 = cy + span / 2;
  const double arrow_len = 0.06 * (f.width - f.left - f.right);

  std::ostringstream os;
  os << open_svg(o.width, o.height)
     << "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" orient=\"auto\">"
        "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"context-stroke\"/></marker></defs>\n";
  draw_axes(os, f, o, false);

  // Thin out long traces; the polyline shape is unchanged at plot resolution.
  const std::size_t stride = std::max<std::size_t>(1, trace.size() / 2000);
  for (std::size_t i = 0; i < n; ++i) {
    const char* color = kPalette[i % kPalette.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t s = 0; s < trace.size(); s += stride) {
      const Vec2 p = trace.states[s].xi(i);
      os << num(f.px(p.x())) << ',' << num(f.py(p.y())) << ' ';
    }
    if (!trace.empty()) {
      const Vec2 p = trace.states.back().xi(i);
      os << num(f.px(p.x())) << ',' << num(f.py(p.y()));
    }
    os << "\"/>\n";

    const Vec2 t = truth.xi(i);
    os << "<rect x=\"" << num(f.px(t.x()) - 5) << "\" y=\"" << num(f.py(t.y()) - 5)
       << "\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"#222\" stroke-width=\"1.5\"/>\n";
    arrow(os, f.px(t.x()), f.py(t.y()), -truth.theta_hat(static_cast<Eigen::Index>(i)), arrow_len, "#2ca02c", 3.0,
          false);
    os << "<text x=\"" << num(f.px(t.x()) + 8) << "\" y=\"" << num(f.py(t.y()) + 16) << "\" font-size=\"12\">"
       << i + 1 << "</text>\n";

    if (!trace.empty()) {
      const EstimatorState& s0 = trace.states.front();
      const Vec2 p0 = s0.xi(i);
      os << "<circle cx=\"" << num(f.px(p0.x())) << "\" cy=\"" << num(f.py(p0.y()))
         << "\" r=\"3.5\" fill=\"none\" stroke=\"black\"/>\n";
      arrow(os, f.px(p0.x()), f.py(p0.y()), -s0.theta_hat(static_cast<Eigen::Index>(i)), arrow_len, "black", 1.2,
            true);
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace bse2
