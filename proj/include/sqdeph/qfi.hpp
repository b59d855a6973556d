#pragma once

// Probe states of the phase-gate + dephasing scheme and their quantum Fisher
// information. Basis ordering is {|e>, |g>}.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string_view>
#include <variant>

#include "sqdeph/error.hpp"
#include "sqdeph/spectral.hpp"

namespace sqdeph {

using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

/// Prepared probe cos(alpha/2) e^{i phi}|e> + sin(alpha/2)|g>.
/// alpha in [0, pi]; phi stored reduced to [0, 2 pi).
class ProbeState {
 public:
  ProbeState(double alpha, double phi) : alpha_(alpha), phi_(wrap_two_pi(phi)) {
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi)) throw DomainError("probe amplitude alpha must lie in [0, pi]");
    if (!std::isfinite(phi)) throw DomainError("probe phase phi must be finite");
  }

  double alpha() const noexcept { return alpha_; }
  double phi() const noexcept { return phi_; }

  friend bool operator==(const ProbeState&, const ProbeState&) = default;

 private:
  double alpha_;
  double phi_;
};

/// Validated 2x2 density matrix: Hermitian and unit trace to 1e-14,
/// eigenvalues >= -1e-12.
class DensityMatrix2 {
 public:
  static constexpr double kHermiticityTolerance = 1e-14;
  static constexpr double kTraceTolerance = 1e-14;
  static constexpr double kPositivityTolerance = 1e-12;

  explicit DensityMatrix2(const Matrix2c& m);

  const Matrix2c& matrix() const noexcept { return m_; }
  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// Eigenvalues in ascending order.
  Eigen::Vector2d eigenvalues() const;

 private:
  Matrix2c m_;
};

/// rho_s for given amplitude, phase and dephasing factor. Raw parameters,
/// no range reduction, so families can be differentiated at any point.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> evolved_density_matrix(Scalar alpha, Scalar phi, Scalar gamma) {
  using std::cos;
  using std::exp;
  using std::sin;
  Eigen::Matrix<std::complex<Scalar>, 2, 2> rho;
  const Scalar c = cos(alpha / 2);
  const Scalar s = sin(alpha / 2);
  const std::complex<Scalar> coherence = (exp(-gamma) * sin(alpha) / 2) * std::complex<Scalar>(cos(phi), sin(phi));
  rho << c * c, coherence, std::conj(coherence), s * s;
  return rho;
}

DensityMatrix2 prepare_state(const ProbeState& probe);

/// Populations unchanged, coherence (e,g) = 1/2 e^{-gamma + i phi} sin alpha.
DensityMatrix2 evolve_state(const ProbeState& probe, double gamma);

enum class QfiParameter { Alpha, Phi };

std::string_view to_string(QfiParameter p);
QfiParameter parse_qfi_parameter(std::string_view name);

/// One-parameter family rho(xi). `derivative` may be empty, in which case
/// only the central-difference mode is available.
struct StateFamily {
  std::function<DensityMatrix2(double)> state;
  std::function<Matrix2c(double)> derivative;
};

/// Pure-state family |psi(xi)>, normalized near the evaluation point.
struct PureFamily {
  std::function<Vector2c(double)> state;
  std::function<Vector2c(double)> derivative;
};

struct AnalyticDerivative {};
/// Symmetric difference with step h and one Richardson refinement (h, h/2).
struct CentralDifference {
  double h = 1e-6;
};
using DerivativeMode = std::variant<AnalyticDerivative, CentralDifference>;

struct QfiReport {
  double value = 0.0;
  double eigen_terms = 0.0;      // sum_i (d lambda_i)^2 / lambda_i
  double coherence_terms = 0.0;  // sum_{i != j} 2 (l_i - l_j)^2/(l_i + l_j) |<i|d j>|^2
  std::size_t dropped_pairs = 0;
  std::size_t dropped_eigen_terms = 0;
};

inline constexpr double kEigenvalueThreshold = 1e-12;
inline constexpr double kDegeneracyThreshold = 1e-10;

/// Family of evolve_state with one parameter free. Carries exact derivatives.
StateFamily evolved_family(QfiParameter free, const ProbeState& probe, double gamma);

/// QFI from the spectral decomposition of rho(xi0). Eigenvector overlaps come
/// from first-order perturbation theory, <i|d j> = <i|d rho|j> / (l_j - l_i).
/// Terms with denominators below kEigenvalueThreshold are dropped and counted.
/// Pairs closer than kDegeneracyThreshold with a coupling below 1e-8 use the
/// gap-cancelled term 2 |<i|d rho|j>|^2 / (l_i + l_j); a larger coupling
/// raises DegeneracyError.
QfiReport qfi_general(const StateFamily& family, double xi0, const DerivativeMode& mode = AnalyticDerivative{});

/// 4 (<d psi|d psi> - |<d psi|psi>|^2).
double qfi_pure(const PureFamily& family, double xi0, const DerivativeMode& mode = AnalyticDerivative{});

/// Closed forms: F_alpha = 1 and F_phi = e^{-2 gamma} (the latter at alpha = pi/2).
double qfi_alpha();
double qfi_phi(double gamma);

/// Lower bound 1/sqrt(nu F) on the estimation error after nu repetitions.
double cramer_rao_bound(double fisher, long long nu);

}  // namespace sqdeph
