#pragma once

// Qualitative trends checked through run_sweep. Shared by the unit
// tests and the acceptance binary.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sqdeph/sweep.hpp"

namespace sqdeph::claims {

struct ClaimResult {
  bool pass = false;
  std::string detail;
};

inline SweepSpec two_point_spec(Quantity q, std::map<std::string, double> fixed, Axis axis1, Axis axis2) {
  SweepSpec spec;
  spec.quantity = q;
  spec.fixed = std::move(fixed);
  spec.axis1 = std::move(axis1);
  spec.axis2 = std::move(axis2);
  return spec;
}

// Values along axis1 at the first axis2 sample.
inline std::vector<double> first_column(const SweepResult& result) {
  std::vector<double> out;
  const std::size_t stride = result.spec.axis2.points;
  for (std::size_t i = 0; i < result.grid.size(); i += stride) out.push_back(result.grid[i].value);
  return out;
}

// F_phi non-increasing in r at s=2, theta=0, t=2.
inline ClaimResult squeezing_lowers_qfi(unsigned jobs) {
  const auto result = run_sweep(
      two_point_spec(Quantity::QfiPhi, {{"s", 2.0}, {"eta", 0.6}, {"theta", 0.0}}, {"r", 0.0, 1.0, 6}, {"t", 2.0, 2.5, 2}),
      jobs);
  const auto v = first_column(result);
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) return {false, "increase between r samples " + std::to_string(i - 1) + " and " + std::to_string(i)};
  }
  return {true, "F_phi(r=0)=" + std::to_string(v.front()) + " F_phi(r=1)=" + std::to_string(v.back())};
}

// theta = pi preserves F_phi better than theta = 0.
inline ClaimResult phase_pi_preserves_qfi(unsigned jobs) {
  const auto result = run_sweep(two_point_spec(Quantity::QfiPhi, {{"s", 2.0}, {"eta", 0.6}, {"r", 0.8}},
                                               {"theta", 0.0, std::numbers::pi, 2}, {"t", 2.0, 2.5, 2}),
                                jobs);
  const auto v = first_column(result);
  return {v[1] > v[0], "theta=0: " + std::to_string(v[0]) + " theta=pi: " + std::to_string(v[1])};
}

// Weak squeezing at theta = 2 beats the vacuum reservoir at t = 1.
inline ClaimResult weak_squeezing_enhances(unsigned jobs) {
  const auto result = run_sweep(two_point_spec(Quantity::DeltaQfiVsVacuum,
                                               {{"s", 2.0}, {"eta", 0.6}, {"r", 0.1}, {"theta", 2.0}},
                                               {"t", 1.0, 1.5, 2}, {"alpha", std::numbers::pi / 2, 3.0, 2}),
                                jobs);
  const double delta = result.grid.front().value;
  return {delta > 0.0, "delta(t=1)=" + std::to_string(delta)};
}

// At theta = 3 the difference starts negative and turns positive before t = 5.
inline ClaimResult late_enhancement(unsigned jobs, double* crossing = nullptr) {
  const auto result = run_sweep(two_point_spec(Quantity::DeltaQfiVsVacuum,
                                               {{"s", 2.0}, {"eta", 0.6}, {"r", 0.1}, {"theta", 3.0}},
                                               {"t", 0.0, 5.0, 501}, {"alpha", std::numbers::pi / 2, 3.0, 2}),
                                jobs);
  const auto t = result.spec.axis1.values();
  const auto v = first_column(result);
  std::size_t first_negative = 0;
  while (first_negative < v.size() && !(v[first_negative] < 0.0)) ++first_negative;
  if (first_negative == v.size() || t[first_negative] > 1.0) return {false, "no negative dip at small t"};
  for (std::size_t i = first_negative + 1; i < v.size(); ++i) {
    if (v[i] > 0.0) {
      // linear interpolation between the bracketing samples
      const double tc = t[i - 1] + (t[i] - t[i - 1]) * (-v[i - 1]) / (v[i] - v[i - 1]);
      if (crossing) *crossing = tc;
      return {true, "sign change near t=" + std::to_string(tc)};
    }
  }
  return {false, "difference never turns positive in (0, 5]"};
}

// Thermal F_phi at t = 5 strictly decreasing in temperature for each curve.
inline ClaimResult temperature_degrades(unsigned jobs) {
  struct Curve {
    double s, r, theta;
  };
  const Curve curves[] = {{2.0, 0.0, 0.0}, {2.0, 0.4, 0.0}, {2.0, 0.8, 0.0},
                          {0.8, 0.8, 0.0}, {0.8, 0.8, std::numbers::pi / 2}, {0.8, 0.8, std::numbers::pi}};
  for (const auto& c : curves) {
    const auto result = run_sweep(two_point_spec(Quantity::QfiPhi,
                                                 {{"s", c.s}, {"eta", 0.6}, {"r", c.r}, {"theta", c.theta}, {"t", 5.0}},
                                                 {"temperature", 0.1, 5.0, 41}, {"omega0", 1.0, 2.0, 2}),
                                  jobs);
    const auto v = first_column(result);
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i] < v[i - 1])) {
        return {false, "not decreasing for s=" + std::to_string(c.s) + " r=" + std::to_string(c.r) +
                           " theta=" + std::to_string(c.theta)};
      }
    }
  }
  return {true, "6 curves strictly decreasing over 41 temperatures"};
}

}  // namespace sqdeph::claims
