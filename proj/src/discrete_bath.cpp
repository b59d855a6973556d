#include "sqdeph/discrete_bath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqdeph/error.hpp"

namespace sqdeph {

namespace {

constexpr std::size_t kChunk = 512;

// Fixed-size chunked summation: partial sums per chunk, then the partials in
// order. The reduction tree depends only on the mode count.
template <typename Term>
double chunked_sum(std::size_t n, Term&& term) {
  std::vector<double> partials((n + kChunk - 1) / kChunk, 0.0);
  for (std::size_t c = 0; c < partials.size(); ++c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    double acc = 0.0;
    for (std::size_t k = c * kChunk; k < end; ++k) acc += term(k);
    partials[c] = acc;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

void validate_modes(const std::vector<BathMode>& modes) {
  if (modes.empty()) throw DomainError("a discrete bath needs at least one mode");
  for (const auto& m : modes) {
    if (!(m.omega > 0.0) || !std::isfinite(m.omega)) throw DomainError("bath mode frequencies must be finite and > 0");
    if (!std::isfinite(m.g)) throw DomainError("bath mode couplings must be finite");
  }
}

}  // namespace

DiscreteBath::DiscreteBath(std::vector<BathMode> modes) : DiscreteBath(std::move(modes), ManualBath{}) {}

DiscreteBath::DiscreteBath(std::vector<BathMode> modes, BathProvenance provenance)
    : modes_(std::move(modes)), provenance_(std::move(provenance)) {
  validate_modes(modes_);
}

std::complex<double> mode_amplitude(const BathMode& mode, double t) {
  if (!(t >= 0.0)) throw DomainError("mode_amplitude requires t >= 0");
  // 1 - e^{ix} = -2i sin(x/2) e^{ix/2}; exact zero at x = 2 pi n up to sin rounding
  const double half = 0.5 * mode.omega * t;
  const std::complex<double> one_minus = -2.0 * std::sin(half) * std::complex<double>(-std::sin(half), std::cos(half));
  return mode.g * one_minus / mode.omega;
}

std::complex<double> squeezed_amplitude(std::complex<double> alpha_k, const SqueezeParams& sq) {
  return alpha_k * std::cosh(sq.r()) + std::polar(1.0, sq.theta()) * std::conj(alpha_k) * std::sinh(sq.r());
}

DiscreteGammaTerms gamma_discrete_terms(const DiscreteBath& bath, double t, const SqueezeParams& sq) {
  if (!(t >= 0.0)) throw DomainError("gamma_discrete requires t >= 0");
  const auto modes = bath.modes();
  const double cosh2r = std::cosh(2.0 * sq.r());
  const double sinh2r = std::sinh(2.0 * sq.r());

  const double from_amplitudes = chunked_sum(modes.size(), [&](std::size_t k) {
    const auto beta = squeezed_amplitude(mode_amplitude(modes[k], t), sq);
    return 2.0 * std::norm(beta);
  });
  const double from_cosines = chunked_sum(modes.size(), [&](std::size_t k) {
    const auto& m = modes[k];
    const double wt = m.omega * t;
    const double sin_half = std::sin(0.5 * wt) / m.omega;
    // 1 - cos(wt) = 2 sin^2(wt/2)
    return 4.0 * m.g * m.g * 2.0 * sin_half * sin_half * (cosh2r - std::cos(wt - sq.theta()) * sinh2r);
  });
  return {from_amplitudes, from_cosines};
}

double gamma_discrete(const DiscreteBath& bath, double t, const SqueezeParams& sq) {
  const auto terms = gamma_discrete_terms(bath, t, sq);
  const double scale = std::max({1.0, std::abs(terms.from_amplitudes), std::abs(terms.from_cosines)});
  if (std::abs(terms.from_amplitudes - terms.from_cosines) > 1e-12 * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "discrete dephasing forms disagree at t=" << t << ": " << terms.from_amplitudes << " vs "
        << terms.from_cosines;
    throw EvaluationError(msg.str());
  }
  return std::max(0.0, terms.from_cosines);
}

DiscreteBath discretize_spectrum(const OhmicSpectrum& spec, std::size_t n_modes, double omega_max) {
  if (n_modes < 1) throw DomainError("discretize_spectrum requires n_modes >= 1");
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw DomainError("discretize_spectrum requires omega_max > 0");
  const double dw = omega_max / static_cast<double>(n_modes);
  std::vector<BathMode> modes;
  modes.reserve(n_modes);
  for (std::size_t k = 1; k <= n_modes; ++k) {
    const double w = (static_cast<double>(k) - 0.5) * dw;
    modes.push_back({w, std::sqrt(spectral_density(w, spec) * dw / 4.0)});
  }
  return DiscreteBath(std::move(modes), DiscretizedBath{spec, n_modes, omega_max});
}

}  // namespace sqdeph
