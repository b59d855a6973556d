#include "sqdeph/verify.hpp"

#include <algorithm>
#include <cmath>

#include "sqdeph/dephasing.hpp"
#include "sqdeph/parallel.hpp"

namespace sqdeph {

OracleReport run_oracle_grid(const OracleGrid& grid, unsigned jobs) {
  struct Point {
    double s, r, theta, t;
  };
  std::vector<Point> points;
  for (double s : grid.s_values)
    for (double r : grid.r_values)
      for (double theta : grid.theta_values)
        for (std::size_t k = 0; k < grid.t_points; ++k) {
          const double t = grid.t_points == 1 ? 0.0 : grid.t_max * static_cast<double>(k) / (grid.t_points - 1);
          points.push_back({s, r, theta, t});
        }

  std::vector<double> deviation(points.size(), 0.0);
  std::vector<double> vacuum_deviation(points.size(), 0.0);
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    const auto& p = points[i];
    const OhmicSpectrum spec(grid.eta, p.s);
    const SqueezeParams sq(p.r, p.theta);
    const double analytic = gamma_analytic(p.t, spec, sq);
    const double quadrature = gamma_quadrature(p.t, spec, sq, grid.rel_tol).value;
    const double diff = std::abs(analytic - quadrature);
    deviation[i] = diff == 0.0 ? 0.0 : diff / std::max(std::abs(analytic), 1e-300);
    if (p.r == 0.0) vacuum_deviation[i] = std::abs(analytic - gamma_vacuum(p.t, spec));
  });

  OracleReport report;
  report.points = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (deviation[i] > report.max_relative_deviation) {
      report.max_relative_deviation = deviation[i];
      report.worst_s = points[i].s;
      report.worst_r = points[i].r;
      report.worst_theta = points[i].theta;
      report.worst_t = points[i].t;
    }
    report.vacuum_max_deviation = std::max(report.vacuum_max_deviation, vacuum_deviation[i]);
  }
  return report;
}

}  // namespace sqdeph
