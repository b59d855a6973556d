#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "sqdeph/error.hpp"

namespace sqdeph {

namespace detail {

// Lanczos approximation, g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace detail

/// Real Euler Gamma function. Lanczos series for x >= 1/2, reflection
/// Gamma(x) = pi / (sin(pi x) Gamma(1 - x)) below. Poles at 0, -1, -2, ...
/// raise EvaluationError.
template <typename Scalar>
Scalar gamma_function(Scalar x) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (x <= 0 && x == std::floor(x)) throw EvaluationError("Gamma function pole at nonpositive integer");
  if (x < Scalar(0.5)) {
    // sin(pi x) via the reduced argument keeps the reflection accurate near integers
    const Scalar n = std::round(x);
    const Scalar frac = x - n;
    Scalar sin_pi_x = std::sin(pi * frac);
    if (static_cast<long long>(n) % 2 != 0) sin_pi_x = -sin_pi_x;
    return pi / (sin_pi_x * gamma_function(Scalar(1) - x));
  }
  const Scalar z = x - 1;
  Scalar series = Scalar(detail::kLanczosCoeffs[0]);
  for (std::size_t i = 1; i < detail::kLanczosCoeffs.size(); ++i) {
    series += Scalar(detail::kLanczosCoeffs[i]) / (z + Scalar(i));
  }
  const Scalar base = z + Scalar(detail::kLanczosG) + Scalar(0.5);
  return std::sqrt(2 * pi) * std::pow(base, z + Scalar(0.5)) * std::exp(-base) * series;
}

/// exp(z) - 1 without cancellation for small |z|.
template <typename Scalar>
std::complex<Scalar> expm1(const std::complex<Scalar>& z) {
  const Scalar x = z.real();
  const Scalar y = z.imag();
  const Scalar half_sin = std::sin(y / 2);
  // Re: e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
  const Scalar re = std::expm1(x) * std::cos(y) - 2 * half_sin * half_sin;
  const Scalar im = std::exp(x) * std::sin(y);
  return {re, im};
}

}  // namespace sqdeph
