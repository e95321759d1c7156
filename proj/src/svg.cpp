#include "hypermds/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hypermds {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string render_disk_plot(const DiskPlot& plot) {
  const double s = plot.size_px;
  const double cx = s / 2.0;
  const double cy = s / 2.0;
  const double radius = s / 2.0 - 12.0;
  const auto px = [&](Complex z) { return cx + radius * z.real(); };
  // SVG y grows downward.
  const auto py = [&](Complex z) { return cy - radius * z.imag(); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.size_px
      << "\" height=\"" << plot.size_px << "\" viewBox=\"0 0 " << plot.size_px
      << ' ' << plot.size_px << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
      << num(radius)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (const auto& traj : plot.trajectories) {
    if (traj.size() < 2) continue;
    svg << "<polyline fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" "
           "points=\"";
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << num(px(traj[i])) << ',' << num(py(traj[i]));
    }
    svg << "\"/>\n";
  }
  for (const Complex& z : plot.initial_points) {
    svg << "<circle cx=\"" << num(px(z)) << "\" cy=\"" << num(py(z))
        << "\" r=\"4\" fill=\"white\" stroke=\"black\" "
           "stroke-width=\"1.2\"/>\n";
  }
  for (const Complex& z : plot.points) {
    svg << "<circle cx=\"" << num(px(z)) << "\" cy=\"" << num(py(z))
        << "\" r=\"4\" fill=\"black\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_curve_plot(const CurvePlot& plot) {
  if (plot.x.size() != plot.y.size() || plot.x.empty()) {
    throw std::invalid_argument("curve plot needs matching non-empty x/y");
  }
  for (double v : plot.x) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("log-scaled x values must be positive");
    }
  }
  const double margin_l = 70.0, margin_r = 20.0, margin_t = 20.0,
               margin_b = 50.0;
  const double w = plot.width_px - margin_l - margin_r;
  const double h = plot.height_px - margin_t - margin_b;

  double lx_min = std::log10(*std::min_element(plot.x.begin(), plot.x.end()));
  double lx_max = std::log10(*std::max_element(plot.x.begin(), plot.x.end()));
  if (lx_max - lx_min < 1e-12) {
    lx_min -= 0.5;
    lx_max += 0.5;
  }
  double y_min = *std::min_element(plot.y.begin(), plot.y.end());
  double y_max = *std::max_element(plot.y.begin(), plot.y.end());
  if (y_max - y_min < 1e-300) {
    y_max = y_min + 1.0;
  }
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const auto px = [&](double x) {
    return margin_l + (std::log10(x) - lx_min) / (lx_max - lx_min) * w;
  };
  const auto py = [&](double y) {
    return margin_t + (1.0 - (y - y_min) / (y_max - y_min)) * h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width_px
      << "\" height=\"" << plot.height_px << "\" viewBox=\"0 0 "
      << plot.width_px << ' ' << plot.height_px << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // frame
  svg << "<rect x=\"" << num(margin_l) << "\" y=\"" << num(margin_t)
      << "\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // decade ticks on x
  const int d_lo = static_cast<int>(std::ceil(lx_min - 1e-9));
  const int d_hi = static_cast<int>(std::floor(lx_max + 1e-9));
  for (int d = d_lo; d <= d_hi; ++d) {
    const double x = std::pow(10.0, d);
    const double xx = px(x);
    svg << "<line x1=\"" << num(xx) << "\" y1=\"" << num(margin_t + h)
        << "\" x2=\"" << num(xx) << "\" y2=\"" << num(margin_t + h + 6)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << num(xx) << "\" y=\"" << num(margin_t + h + 22)
        << "\" font-family=\"sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\">1e"
        << d << "</text>\n";
  }
  // min/max labels on y
  for (double yv : {y_min + pad, y_max - pad}) {
    const double yy = py(yv);
    svg << "<line x1=\"" << num(margin_l - 6) << "\" y1=\"" << num(yy)
        << "\" x2=\"" << num(margin_l) << "\" y2=\"" << num(yy)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << num(margin_l - 10) << "\" y=\"" << num(yy + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"end\">"
        << num(yv) << "</text>\n";
  }
  svg << "<text x=\"" << num(margin_l + w / 2) << "\" y=\""
      << num(margin_t + h + 40)
      << "\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\">"
      << plot.x_label << "</text>\n";
  svg << "<text x=\"14\" y=\"" << num(margin_t + h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"14\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << num(margin_t + h / 2) << ")\">" << plot.y_label << "</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"#1f5fd0\" stroke-width=\"1.6\" "
         "points=\"";
  for (std::size_t i = 0; i < plot.x.size(); ++i) {
    if (i > 0) svg << ' ';
    svg << num(px(plot.x[i])) << ',' << num(py(plot.y[i]));
  }
  svg << "\"/>\n";
  for (std::size_t i = 0; i < plot.x.size(); ++i) {
    svg << "<circle cx=\"" << num(px(plot.x[i])) << "\" cy=\""
        << num(py(plot.y[i])) << "\" r=\"3\" fill=\"#1f5fd0\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hypermds
