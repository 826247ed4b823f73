#include "ringemit/emission.hpp"

#include <cmath>
#include <numbers>
#include <iostream>
#include <stdexcept>

#include "ringemit/parallel.hpp"

namespace ringemit {

namespace {
const std::complex<double> I1(0.0, 1.0);
}

EmissionKernel::EmissionKernel(RingLattice lattice, LaserDrive drive)
    : lattice_(std::move(lattice)), drive_(drive) {
  decay_ = build_decay_matrix(lattice_);
  basis_ = circulant_modes(decay_);
  int n = lattice_.n_sites;

  re_clamped_ = basis_.rates.real();
  for (int k = 0; k < n; ++k) {
    if (re_clamped_(k) < subradiant_floor) {
      re_clamped_(k) = subradiant_floor;
      ++clamped_;
    }
  }
  if (clamped_ > 0)
    std::cerr << "ringemit: clamped " << clamped_ << " subradiant mode rate(s) below "
              << subradiant_floor << " in denominators\n";

  inv_den_.resize(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      std::complex<double> den(re_clamped_(m) + re_clamped_(k),
                               basis_.rates(m).imag() - basis_.rates(k).imag());
      inv_den_(m, k) = 1.0 / den;
    }

  drive_weights_ = geometric_factor_B({drive_.theta_l, drive_.phi_l}) / std::sqrt(double(n));
}

Eigen::VectorXcd EmissionKernel::geometric_factor_B(const Direction& dir) const {
  int n = lattice_.n_sites;
  double st = std::sin(dir.theta);
  double qx = k_laser * st * std::cos(dir.phi), qy = k_laser * st * std::sin(dir.phi);
  Eigen::VectorXcd b(n);
  for (int g = 0; g < n; ++g) {
    const Eigen::Vector3d& r = lattice_.positions[g];
    b(g) = std::polar(1.0, -(qx * r.x() + qy * r.y()));
  }
  Eigen::VectorXcd B(n);
  for (int m = 0; m < n; ++m) {
    std::complex<double> acc = 0.0;
    for (int g = 0; g < n; ++g) acc += b(g) * std::polar(1.0, lattice_.site_angles[g] * m);
    B(m) = acc;
  }
  return B;
}

Eigen::MatrixXcd EmissionKernel::kernel_matrix(const Direction& dir) const {
  int n = lattice_.n_sites;
  Eigen::VectorXcd B = geometric_factor_B(dir);
  double st = std::sin(dir.theta);
  double pref = 3.0 * gamma_total * st * st / (4.0 * std::numbers::pi * n);
  Eigen::MatrixXcd K(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) K(m, k) = pref * B(m) * std::conj(B(k)) * inv_den_(m, k);
  return K;
}

double EmissionKernel::single_photon_intensity(const Direction& dir) const {
  int n = lattice_.n_sites;
  Eigen::VectorXcd B = geometric_factor_B(dir);
  Eigen::VectorXcd u = drive_weights_.conjugate().cwiseProduct(B);
  std::complex<double> acc = 0.0;
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) acc += u(m) * std::conj(u(k)) * inv_den_(m, k);
  double st = std::sin(dir.theta);
  double pref = 3.0 * gamma_total * st * st / (4.0 * std::numbers::pi * n);
  return pref / n * acc.real();
}

double EmissionKernel::far_field_intensity(const Direction& dir) const {
  int n = lattice_.n_sites;
  Eigen::Vector3d q = dir.unit();
  Eigen::Vector3d kl = Direction{drive_.theta_l, drive_.phi_l}.unit();
  std::complex<double> s = 0.0;
  for (int a = 0; a < n; ++a) s += std::polar(1.0, k_laser * lattice_.positions[a].dot(q - kl));
  double st = std::sin(dir.theta);
  return 3.0 * st * st / (8.0 * std::numbers::pi * n) * std::norm(s);
}

double EmissionKernel::perpendicular_intensity(const Direction& dir) const {
  if (drive_.theta_l != 0.0)
    throw std::invalid_argument("perpendicular_intensity: drive must be along +z");
  int n = lattice_.n_sites;
  Eigen::VectorXcd B = geometric_factor_B(dir);
  double st = std::sin(dir.theta);
  double pref = 3.0 * gamma_total * st * st / (4.0 * std::numbers::pi * n);
  return pref * std::norm(B(0)) / (2.0 * re_clamped_(0));
}

double EmissionKernel::bessel_approximation(const Direction& dir) const {
  if (drive_.theta_l != 0.0)
    throw std::invalid_argument("bessel_approximation: drive must be along +z");
  int n = lattice_.n_sites;
  double st = std::sin(dir.theta);
  double j0 = std::cyl_bessel_j(0.0, k_laser * lattice_.radius * st);
  return 3.0 * gamma_total * n / (4.0 * std::numbers::pi) * st * st * j0 * j0 / (2.0 * re_clamped_(0));
}

Eigen::VectorXcd EmissionKernel::mapping_coefficients_g(const Direction& dir, double omega,
                                                        int polarization, double time) const {
  if (polarization != 0 && polarization != 1)
    throw std::invalid_argument("mapping_coefficients_g: polarization must be 0 or 1");
  int n = lattice_.n_sites;
  // dipole projection onto the transverse basis: theta_hat picks -sin(theta), phi_hat nothing
  double ktilde = polarization == 0 ? -std::sin(dir.theta) : 0.0;
  Eigen::VectorXcd B = geometric_factor_B(dir);
  Eigen::VectorXcd res(n);
  Eigen::Vector3d klv = drive_.wavevector();
  for (int a = 0; a < n; ++a) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> den(re_clamped_(k), omega + basis_.rates(k).imag());
      acc += B(k) * std::polar(1.0, -2.0 * std::numbers::pi * k * a / n) / den;
    }
    res(a) = -I1 * ktilde * std::polar(1.0, -omega * time) *
             std::polar(1.0, klv.dot(lattice_.positions[a])) * acc / double(n);
  }
  return res;
}

PairSetup EmissionKernel::pair_setup(const TwoExcitationAmplitude& state) const {
  int n = lattice_.n_sites;
  if (state.psi.rows() != n || state.psi.cols() != n)
    throw std::invalid_argument("pair_setup: amplitude size does not match lattice");
  Eigen::VectorXcd P(n);
  Eigen::Vector3d klv = drive_.wavevector();
  for (int k = 0; k < n; ++k) P(k) = std::polar(1.0, klv.dot(lattice_.positions[k]));
  Eigen::MatrixXcd psi_l = P.asDiagonal() * state.psi * P.asDiagonal();
  PairSetup s;
  s.psi_tilde = basis_.modes.adjoint() * psi_l * basis_.modes.conjugate();
  s.c_tilde = s.psi_tilde * s.psi_tilde.adjoint();
  return s;
}

double EmissionKernel::pair_intensity(const PairSetup& setup, const Direction& dir) const {
  int n = lattice_.n_sites;
  Eigen::VectorXcd B = geometric_factor_B(dir);
  std::complex<double> acc = 0.0;
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      acc += B(m) * std::conj(B(k)) * inv_den_(m, k) * setup.c_tilde(m, k);
  double st = std::sin(dir.theta);
  double pref = 3.0 * gamma_total * st * st / (4.0 * std::numbers::pi * n);
  return 4.0 * pref * acc.real();
}

double EmissionKernel::pair_intensity(const TwoExcitationAmplitude& state, const Direction& dir) const {
  return pair_intensity(pair_setup(state), dir);
}

double EmissionKernel::pair_correlation_G(const PairSetup& setup, const Direction& a,
                                          const Direction& b) const {
  Eigen::MatrixXcd W = setup.psi_tilde.transpose() * kernel_matrix(a) * setup.psi_tilde.conjugate();
  Eigen::MatrixXcd Kb = kernel_matrix(b);
  return 4.0 * W.cwiseProduct(Kb).sum().real();
}

double EmissionKernel::pair_correlation_G(const TwoExcitationAmplitude& state, const Direction& a,
                                          const Direction& b) const {
  return pair_correlation_G(pair_setup(state), a, b);
}

std::optional<double> EmissionKernel::pair_correlation_g2(const PairSetup& setup, const Direction& a,
                                                          const Direction& b) const {
  double ia = pair_intensity(setup, a);
  double ib = pair_intensity(setup, b);
  if (ia < intensity_null || ib < intensity_null) return std::nullopt;
  return pair_correlation_G(setup, a, b) / (ia * ib) - 1.0;
}

std::vector<double> intensity_map(const EmissionKernel& kernel, std::span<const Direction> dirs) {
  std::vector<double> out(dirs.size());
  parallel_for(dirs.size(), [&](size_t i) { out[i] = kernel.single_photon_intensity(dirs[i]); });
  return out;
}

std::vector<double> perpendicular_map(const EmissionKernel& kernel, std::span<const Direction> dirs) {
  std::vector<double> out(dirs.size());
  parallel_for(dirs.size(), [&](size_t i) { out[i] = kernel.perpendicular_intensity(dirs[i]); });
  return out;
}

std::vector<double> far_field_map(const EmissionKernel& kernel, std::span<const Direction> dirs) {
  std::vector<double> out(dirs.size());
  parallel_for(dirs.size(), [&](size_t i) { out[i] = kernel.far_field_intensity(dirs[i]); });
  return out;
}

std::vector<double> pair_intensity_map(const EmissionKernel& kernel, const PairSetup& setup,
                                       std::span<const Direction> dirs) {
  std::vector<double> out(dirs.size());
  parallel_for(dirs.size(), [&](size_t i) { out[i] = kernel.pair_intensity(setup, dirs[i]); });
  return out;
}

std::vector<std::optional<double>> g2_map(const EmissionKernel& kernel, const PairSetup& setup,
                                          std::span<const Direction> dirs, const Direction& ref) {
  std::vector<std::optional<double>> out(dirs.size());
  parallel_for(dirs.size(), [&](size_t i) { out[i] = kernel.pair_correlation_g2(setup, dirs[i], ref); });
  return out;
}

}  // namespace ringemit
