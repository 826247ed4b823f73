#include "ringemit/dipole_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringemit {

namespace {

// f1 = cos(k)/k^2 - sin(k)/k^3, f2 = sin(k)/k,
// f3 = sin(k)/k^2 + cos(k)/k^3, f4 = cos(k)/k.
// Below k = 1e-6 the direct forms lose digits to cancellation; the series
// keep full precision (truncation ~1e-84 there).
constexpr double series_cut = 1e-6;

double f1(double k) {
  if (k < series_cut) {
    double k2 = k * k;
    return -1.0 / 3.0 + k2 / 30.0 - k2 * k2 / 840.0 + k2 * k2 * k2 / 45360.0;
  }
  return std::cos(k) / (k * k) - std::sin(k) / (k * k * k);
}

double f2(double k) {
  if (k < series_cut) {
    double k2 = k * k;
    return 1.0 - k2 / 6.0 + k2 * k2 / 120.0 - k2 * k2 * k2 / 5040.0;
  }
  return std::sin(k) / k;
}

double f3(double k) {
  if (k < series_cut) {
    double k2 = k * k;
    return 1.0 / (k * k * k) + 1.0 / (2.0 * k) - k / 8.0 + k * k2 / 144.0;
  }
  return std::sin(k) / (k * k) + std::cos(k) / (k * k * k);
}

double f4(double k) {
  if (k < series_cut) {
    double k2 = k * k;
    return 1.0 / k - k / 2.0 + k * k2 / 24.0 - k * k2 * k2 / 720.0;
  }
  return std::cos(k) / k;
}

}  // namespace

double gamma_pair(double kappa, double cos_dr) {
  if (kappa < 0.0) throw std::domain_error("gamma_pair: kappa must be >= 0");
  double c2 = cos_dr * cos_dr;
  return 1.5 * gamma_total * ((1.0 - 3.0 * c2) * f1(kappa) + (1.0 - c2) * f2(kappa));
}

double omega_pair(double kappa, double cos_dr) {
  if (!(kappa > 0.0)) throw std::domain_error("omega_pair: kappa must be > 0");
  double c2 = cos_dr * cos_dr;
  return 1.5 * gamma_total * ((1.0 - 3.0 * c2) * f3(kappa) - (1.0 - c2) * f4(kappa));
}

DecayMatrix build_decay_matrix(const RingLattice& lattice) {
  int n = lattice.n_sites;
  DecayMatrix d;
  d.gamma = Eigen::MatrixXd::Zero(n, n);
  d.omega = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    d.gamma(a, a) = gamma_total;
    for (int b = a + 1; b < n; ++b) {
      // separations lie in the lattice plane, dipoles along z: cos_dr = 0
      double kappa = k_laser * (lattice.positions[a] - lattice.positions[b]).norm();
      double g = gamma_pair(kappa, 0.0);
      double o = omega_pair(kappa, 0.0);
      d.gamma(a, b) = d.gamma(b, a) = g;
      d.omega(a, b) = d.omega(b, a) = o;
    }
  }
  d.coupling = d.gamma.cast<std::complex<double>>() +
               std::complex<double>(0.0, 1.0) * d.omega.cast<std::complex<double>>();
  return d;
}

CollectiveModeBasis circulant_modes(const DecayMatrix& decay) {
  const Eigen::MatrixXcd& j = decay.coupling;
  int n = static_cast<int>(j.rows());
  double resid = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      resid = std::max(resid, std::abs(j(a, b) - j(0, (b - a + n) % n)));
  if (resid > 1e-9)
    throw std::invalid_argument("circulant_modes: coupling matrix is not circulant");

  CollectiveModeBasis basis;
  basis.modes.resize(n, n);
  basis.rates.resize(n);
  double rootn = std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    std::complex<double> d = 0.0;
    for (int m = 0; m < n; ++m) {
      auto ph = std::polar(1.0, 2.0 * std::numbers::pi * m * k / n);
      basis.modes(m, k) = ph / rootn;
      d += j(0, m) * ph;
    }
    basis.rates(k) = d;
  }
  return basis;
}

double degree_of_collectivity(const CollectiveModeBasis& basis) {
  return basis.rates.real().maxCoeff();
}

}  // namespace ringemit
