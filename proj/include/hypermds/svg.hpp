#pragma once

#include <string>
#include <vector>

#include "hypermds/geometry.hpp"

namespace hypermds {

/// Disk figure: unit-circle boundary, solid markers for `points`, hollow
/// markers for `initial_points`, and one polyline per point trajectory.
/// Output bytes are deterministic for fixed input.
struct DiskPlot {
  std::vector<Complex> points;
  std::vector<Complex> initial_points;              // may be empty
  std::vector<std::vector<Complex>> trajectories;   // may be empty
  int size_px = 640;
};

std::string render_disk_plot(const DiskPlot& plot);

/// Simple x/y curve with a logarithmic x axis (decade ticks).
struct CurvePlot {
  std::vector<double> x;  // positive
  std::vector<double> y;
  std::string x_label = "a";
  std::string y_label = "best error";
  int width_px = 720;
  int height_px = 480;
};

std::string render_curve_plot(const CurvePlot& plot);

}  // namespace hypermds
