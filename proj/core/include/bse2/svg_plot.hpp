#pragma once

#include <string>
#include <vector>

#include "bse2/estimator.hpp"

namespace bse2 {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;  // non-positive values are clamped to the smallest positive one
  bool show_legend = true;
  int width = 760;
  int height = 460;
};

/// Polyline chart with axes, ticks and an optional legend, as an SVG document.
std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

/// Planar paths of the unscaled position estimates with attitude arrows.
/// True poses are squares with solid green arrows; initial estimates are
/// circles with dashed black arrows. Arrow direction for agent i is the
/// attitude relative to the reference agent, -theta_i.
std::string render_trajectory_plot(const TrajectoryTrace& trace, const EstimatorState& truth,
                                   const std::string& title);

/// e(t) components, e_p(t), and planar trajectories for a trace.
std::string render_bearing_error_plot(const TrajectoryTrace& trace, const std::string& title);
std::string render_position_error_plot(const TrajectoryTrace& trace, const std::string& title);

}  // namespace bse2
