#pragma once

// Finite-mode route to the dephasing factor. Each bath mode k contributes
// 2|beta_k(t)|^2 where beta_k is the squeezed image of the displacement
// amplitude alpha_k(t) = g_k (1 - e^{i w_k t}) / w_k.

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "sqdeph/spectral.hpp"

namespace sqdeph {

struct BathMode {
  double omega;  // w_k > 0
  double g;      // coupling g_k

  friend bool operator==(const BathMode&, const BathMode&) = default;
};

struct ManualBath {};

struct DiscretizedBath {
  OhmicSpectrum spec;
  std::size_t n_modes;
  double omega_max;
};

using BathProvenance = std::variant<ManualBath, DiscretizedBath>;

class DiscreteBath {
 public:
  /// Hand-built bath; every omega must be positive and the list nonempty.
  explicit DiscreteBath(std::vector<BathMode> modes);

  std::span<const BathMode> modes() const noexcept { return modes_; }
  const BathProvenance& provenance() const noexcept { return provenance_; }

  friend DiscreteBath discretize_spectrum(const OhmicSpectrum& spec, std::size_t n_modes, double omega_max);

 private:
  DiscreteBath(std::vector<BathMode> modes, BathProvenance provenance);

  std::vector<BathMode> modes_;
  BathProvenance provenance_;
};

/// alpha_k(t) = g (1 - e^{i w t}) / w.
std::complex<double> mode_amplitude(const BathMode& mode, double t);

/// beta_k = alpha_k cosh r + e^{i theta} conj(alpha_k) sinh r.
std::complex<double> squeezed_amplitude(std::complex<double> alpha_k, const SqueezeParams& sq);

/// Both forms of the mode sum, returned for cross-checking.
struct DiscreteGammaTerms {
  double from_amplitudes;  // sum_k 2 |beta_k|^2
  double from_cosines;     // sum_k 4 g^2 (1 - cos w t)/w^2 [cosh 2r - cos(w t - theta) sinh 2r]
};

DiscreteGammaTerms gamma_discrete_terms(const DiscreteBath& bath, double t, const SqueezeParams& sq);

/// Dephasing factor of a finite bath. Computes both forms, checks they agree
/// to 1e-12 (relative to the larger), returns the cosine form.
double gamma_discrete(const DiscreteBath& bath, double t, const SqueezeParams& sq);

/// Midpoint discretization: w_k = (k - 1/2) dw, dw = omega_max / n_modes,
/// g_k = sqrt(J(w_k) dw / 4), so that sum 4 g_k^2 F(w_k) approximates
/// the integral of J(w) F(w).
DiscreteBath discretize_spectrum(const OhmicSpectrum& spec, std::size_t n_modes, double omega_max);

}  // namespace sqdeph
