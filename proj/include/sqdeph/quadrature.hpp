#pragma once

// Globally adaptive 15-point Gauss-Kronrod integration over a list of
// initial panels. The interval with the largest error estimate is bisected
// until the summed estimate meets the tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "sqdeph/error.hpp"

namespace sqdeph {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_intervals = 200000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  friend bool operator<(const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; }
};

// Single G7/K15 rule on [a, b] with the QUADPACK error heuristic.
template <typename F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fx{};
  fx[7] = f(center);
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    fx[i] = f(center - dx);
    fx[14 - i] = f(center + dx);
  }

  double kronrod = kKronrodWeights[7] * fx[7];
  double gauss = kGaussWeights[3] * fx[7];
  double abs_kronrod = std::abs(kronrod);
  for (std::size_t i = 0; i < 7; ++i) {
    const double pair = fx[i] + fx[14 - i];
    kronrod += kKronrodWeights[i] * pair;
    abs_kronrod += kKronrodWeights[i] * (std::abs(fx[i]) + std::abs(fx[14 - i]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fx[7] - mean);
  for (std::size_t i = 0; i < 7; ++i) {
    asc += kKronrodWeights[i] * (std::abs(fx[i] - mean) + std::abs(fx[14 - i] - mean));
  }

  kronrod *= half;
  abs_kronrod *= std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss * half));
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_kronrod > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * abs_kronrod, err);
  }
  return {a, b, kronrod, err};
}

}  // namespace detail

/// Integrate f over [breakpoints.front(), breakpoints.back()], starting from
/// one panel per consecutive breakpoint pair. Throws ConvergenceError when
/// max_intervals is reached before the tolerance is met.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, std::span<const double> breakpoints, const QuadratureOptions& opts) {
  if (breakpoints.size() < 2) throw DomainError("integrate_adaptive needs at least two breakpoints");
  if (!(opts.rel_tol > 0.0) && !(opts.abs_tol > 0.0)) throw DomainError("integrate_adaptive needs a positive tolerance");

  std::priority_queue<detail::Panel> queue;
  double total = 0.0;
  double total_err = 0.0;
  QuadratureResult result;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) throw DomainError("breakpoints must be strictly increasing");
    auto panel = detail::gauss_kronrod_15(f, breakpoints[i], breakpoints[i + 1]);
    result.evaluations += 15;
    total += panel.value;
    total_err += panel.error;
    queue.push(panel);
  }

  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (total_err > tolerance()) {
    if (queue.size() >= opts.max_intervals) {
      std::ostringstream msg;
      msg << "adaptive quadrature exhausted " << opts.max_intervals << " intervals; value " << total
          << ", error estimate " << total_err;
      throw ConvergenceError(msg.str(), total, total_err);
    }
    const auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("adaptive quadrature reached floating-point resolution", total, total_err);
    }
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum in left-to-right order so the value does not carry the running
  // update's rounding.
  std::vector<detail::Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  result.value = 0.0;
  result.error_estimate = 0.0;
  for (const auto& p : panels) {
    result.value += p.value;
    result.error_estimate += p.error;
  }
  result.intervals = panels.size();
  return result;
}

}  // namespace sqdeph
