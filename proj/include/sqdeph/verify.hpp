#pragma once

#include <cstddef>
#include <vector>

namespace sqdeph {

/// The closed-form vs quadrature grid: s x r x theta x t.
struct OracleGrid {
  std::vector<double> s_values{0.8, 1.0, 2.0};
  std::vector<double> r_values{0.0, 0.1, 0.8};
  std::vector<double> theta_values{0.0, 2.0, 3.0, 3.141592653589793};
  double t_max = 10.0;
  std::size_t t_points = 50;
  double eta = 0.6;
  double rel_tol = 1e-10;
};

struct OracleReport {
  double max_relative_deviation = 0.0;
  double worst_s = 0.0, worst_r = 0.0, worst_theta = 0.0, worst_t = 0.0;
  std::size_t points = 0;
  double vacuum_max_deviation = 0.0;  // gamma_analytic(r = 0) vs gamma_vacuum
};

/// |analytic - quadrature| / max(|analytic|, 1e-300) over the grid; points
/// where both vanish count as zero deviation.
OracleReport run_oracle_grid(const OracleGrid& grid, unsigned jobs);

}  // namespace sqdeph
