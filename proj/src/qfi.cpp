#include "sqdeph/qfi.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <string>

namespace sqdeph {

namespace {

constexpr double kCouplingTolerance = 1e-8;

std::complex<double> unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

template <typename Fn>
auto richardson_derivative(Fn&& f, double x, double h) {
  if (!(h >= 1e-8 && h <= 1e-3)) throw DomainError("central-difference step h must lie in [1e-8, 1e-3]");
  const auto coarse = ((f(x + h) - f(x - h)) / (2.0 * h)).eval();
  const double hh = 0.5 * h;
  const auto fine = ((f(x + hh) - f(x - hh)) / (2.0 * hh)).eval();
  return ((4.0 * fine - coarse) / 3.0).eval();
}

// Phase gauge: first component with non-negligible modulus made real positive.
void fix_gauge(Vector2c& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mod = std::abs(v(k));
    if (mod > 1e-14) {
      v *= std::conj(v(k)) / mod;
      return;
    }
  }
}

}  // namespace

DensityMatrix2::DensityMatrix2(const Matrix2c& m) : m_(m) {
  if (!m_.allFinite()) throw DomainError("density matrix has non-finite entries");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTolerance) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - 1.0) > kTraceTolerance) throw DomainError("density matrix trace differs from 1");
  if (eigenvalues().minCoeff() < -kPositivityTolerance) throw DomainError("density matrix is not positive semidefinite");
}

Eigen::Vector2d DensityMatrix2::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<Matrix2c>(m_, Eigen::EigenvaluesOnly).eigenvalues();
}

DensityMatrix2 prepare_state(const ProbeState& probe) {
  Vector2c psi;
  psi << std::polar(std::cos(probe.alpha() / 2.0), probe.phi()), std::sin(probe.alpha() / 2.0);
  Matrix2c rho = psi * psi.adjoint();
  // the outer product leaves rounding-level asymmetry in the diagonal imaginary parts
  rho(0, 0) = rho(0, 0).real();
  rho(1, 1) = rho(1, 1).real();
  rho(1, 0) = std::conj(rho(0, 1));
  return DensityMatrix2(rho);
}

DensityMatrix2 evolve_state(const ProbeState& probe, double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("evolve_state requires gamma >= 0");
  return DensityMatrix2(evolved_density_matrix(probe.alpha(), probe.phi(), gamma));
}

std::string_view to_string(QfiParameter p) { return p == QfiParameter::Alpha ? "alpha" : "phi"; }

QfiParameter parse_qfi_parameter(std::string_view name) {
  if (name == "alpha") return QfiParameter::Alpha;
  if (name == "phi") return QfiParameter::Phi;
  throw DomainError("unknown estimation parameter '" + std::string(name) + "' (expected alpha or phi)");
}

StateFamily evolved_family(QfiParameter free, const ProbeState& probe, double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("evolved_family requires gamma >= 0");
  const double alpha = probe.alpha();
  const double phi = probe.phi();
  const double damping = std::exp(-gamma);
  if (free == QfiParameter::Alpha) {
    return {
        [=](double a) { return DensityMatrix2(evolved_density_matrix(a, phi, gamma)); },
        [=](double a) {
          Matrix2c d;
          const auto coherence = 0.5 * damping * std::cos(a) * unit_phase(phi);
          d << -0.5 * std::sin(a), coherence, std::conj(coherence), 0.5 * std::sin(a);
          return d;
        },
    };
  }
  return {
      [=](double p) { return DensityMatrix2(evolved_density_matrix(alpha, p, gamma)); },
      [=](double p) {
        Matrix2c d;
        const auto coherence = std::complex<double>(0.0, 0.5 * damping * std::sin(alpha)) * unit_phase(p);
        d << 0.0, coherence, std::conj(coherence), 0.0;
        return d;
      },
  };
}

QfiReport qfi_general(const StateFamily& family, double xi0, const DerivativeMode& mode) {
  const DensityMatrix2 rho = family.state(xi0);
  Matrix2c drho;
  if (std::holds_alternative<AnalyticDerivative>(mode)) {
    if (!family.derivative) throw DomainError("state family has no analytic derivative");
    drho = family.derivative(xi0);
  } else {
    const double h = std::get<CentralDifference>(mode).h;
    drho = richardson_derivative([&](double x) { return family.state(x).matrix(); }, xi0, h);
  }

  const Eigen::SelfAdjointEigenSolver<Matrix2c> solver(rho.matrix());
  const Eigen::Vector2d lambda = solver.eigenvalues();
  Eigen::Matrix2cd basis = solver.eigenvectors();
  for (Eigen::Index k = 0; k < 2; ++k) {
    Vector2c v = basis.col(k);
    fix_gauge(v);
    basis.col(k) = v;
  }
  // <i| d rho |j> in the eigenbasis
  const Matrix2c coupling = basis.adjoint() * drho * basis;

  QfiReport report;
  for (Eigen::Index i = 0; i < 2; ++i) {
    if (lambda(i) <= kEigenvalueThreshold) {
      ++report.dropped_eigen_terms;
      continue;
    }
    const double dlambda = coupling(i, i).real();
    report.eigen_terms += dlambda * dlambda / lambda(i);
  }
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      if (i == j) continue;
      const double sum = lambda(i) + lambda(j);
      const double gap = lambda(i) - lambda(j);
      if (sum <= kEigenvalueThreshold) {
        ++report.dropped_pairs;
        continue;
      }
      if (std::abs(gap) < kDegeneracyThreshold) {
        if (lambda(i) > kEigenvalueThreshold && lambda(j) > kEigenvalueThreshold &&
            std::abs(coupling(i, j)) > kCouplingTolerance) {
          std::ostringstream msg;
          msg << "degenerate eigenvalues " << lambda(i) << ", " << lambda(j) << " with coupling "
              << std::abs(coupling(i, j));
          throw DegeneracyError(msg.str());
        }
        // (l_i - l_j)^2 |<i|d rho|j>|^2 / (l_j - l_i)^2 with the gap cancelled
        report.coherence_terms += 2.0 * std::norm(coupling(i, j)) / sum;
        continue;
      }
      const double overlap = std::abs(coupling(i, j) / (lambda(j) - lambda(i)));
      report.coherence_terms += 2.0 * gap * gap / sum * overlap * overlap;
    }
  }
  report.value = report.eigen_terms + report.coherence_terms;
  return report;
}

double qfi_pure(const PureFamily& family, double xi0, const DerivativeMode& mode) {
  const Vector2c psi = family.state(xi0);
  const double norm = psi.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "pure-state family is not normalized at xi=" << xi0 << " (<psi|psi> = " << norm << ")";
    throw NormalizationError(msg.str());
  }
  Vector2c dpsi;
  if (std::holds_alternative<AnalyticDerivative>(mode)) {
    if (!family.derivative) throw DomainError("pure-state family has no analytic derivative");
    dpsi = family.derivative(xi0);
  } else {
    dpsi = richardson_derivative(family.state, xi0, std::get<CentralDifference>(mode).h);
  }
  const double value = 4.0 * (dpsi.squaredNorm() - std::norm(dpsi.dot(psi)));
  return value < 0.0 ? 0.0 : value;
}

double qfi_alpha() { return 1.0; }

double qfi_phi(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("qfi_phi requires gamma >= 0");
  return std::exp(-2.0 * gamma);
}

double cramer_rao_bound(double fisher, long long nu) {
  if (!(fisher > 0.0) || !std::isfinite(fisher)) throw DomainError("Cramer-Rao bound requires Fisher information > 0");
  if (nu < 1) throw DomainError("Cramer-Rao bound requires nu >= 1 repetitions");
  return 1.0 / std::sqrt(static_cast<double>(nu) * fisher);
}

}  // namespace sqdeph
