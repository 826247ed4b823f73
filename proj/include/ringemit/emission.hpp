#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>
#include <Eigen/Dense>

#include "ringemit/atomic_states.hpp"
#include "ringemit/dipole_kernel.hpp"
#include "ringemit/geometry.hpp"

namespace ringemit {

// Two-excitation state dressed with the laser phases and rotated to the
// collective mode basis; c_tilde = psi_tilde * psi_tilde^dagger.
struct PairSetup {
  Eigen::MatrixXcd psi_tilde;
  Eigen::MatrixXcd c_tilde;
};

// Intensities below this are treated as photon-count nulls: g2 is undefined there.
inline constexpr double intensity_null = 1e-14;

// Closed-form emission from the driven ring: collective mode basis, drive
// weights, and the angular kernel
//   K_mn(Omega) = (3*gamma_total*sin^2(theta) / (4*pi*N))
//                 * B_m(Omega)*conj(B_n(Omega)) / (D_m + conj(D_n)),
// with subradiant Re D clamped in the denominators. Immutable once built;
// all evaluation methods are const and safe to call concurrently.
class EmissionKernel {
 public:
  EmissionKernel(RingLattice lattice, LaserDrive drive);

  const RingLattice& lattice() const { return lattice_; }
  const LaserDrive& drive() const { return drive_; }
  const CollectiveModeBasis& basis() const { return basis_; }
  int n() const { return lattice_.n_sites; }
  int clamped_modes() const { return clamped_; }

  // B_m(Omega) = sum_g exp(-i*q_xy . r_g) * exp(i*phi_g*m), m = 0..N-1, with
  // q = k_laser * dir. B_m(z) = N*delta_m0; sum_m |B_m|^2 = N^2 for every direction.
  Eigen::VectorXcd geometric_factor_B(const Direction& dir) const;

  Eigen::MatrixXcd kernel_matrix(const Direction& dir) const;

  // I(Omega) = (1/N) * w^dag K(Omega) w with w_m = B_m(laser)/sqrt(N); integrates to 1.
  double single_photon_intensity(const Direction& dir) const;

  // Phased-array pattern (3*sin^2(theta)/(8*pi*N)) |sum_a exp(i*k_laser*R*r_a_hat.(q - k_L_hat))|^2.
  double far_field_intensity(const Direction& dir) const;

  // Drive along +z only (throws otherwise): single-mode form K_00(Omega).
  double perpendicular_intensity(const Direction& dir) const;

  // Small-ring limit of perpendicular_intensity: B_0 -> N*J0(k_laser*R*sin(theta)).
  double bessel_approximation(const Direction& dir) const;

  // Photon-mode amplitudes g_a(q, omega) for all sites, polarization 0 = theta_hat
  // (dipole projection -sin(theta)) or 1 = phi_hat (projection 0); omega relative
  // to the atomic line. |g| is independent of time.
  Eigen::VectorXcd mapping_coefficients_g(const Direction& dir, double omega, int polarization,
                                          double time) const;

  PairSetup pair_setup(const TwoExcitationAmplitude& state) const;

  // I_2(Omega) = 4 * Re sum_mn K_mn(Omega) * c_tilde_mn; integrates to 2.
  double pair_intensity(const PairSetup& setup, const Direction& dir) const;
  double pair_intensity(const TwoExcitationAmplitude& state, const Direction& dir) const;

  // G(A, B) = 4 * Re sum_mn [psi_tilde^T K(A) conj(psi_tilde)]_mn K_mn(B);
  // symmetric in (A, B), marginal integral over B gives I_2(A).
  double pair_correlation_G(const PairSetup& setup, const Direction& a, const Direction& b) const;
  double pair_correlation_G(const TwoExcitationAmplitude& state, const Direction& a,
                            const Direction& b) const;

  // g2(A, B) = G/(I_2(A)*I_2(B)) - 1; empty when either intensity is a null.
  std::optional<double> pair_correlation_g2(const PairSetup& setup, const Direction& a,
                                            const Direction& b) const;

 private:
  RingLattice lattice_;
  LaserDrive drive_;
  DecayMatrix decay_;
  CollectiveModeBasis basis_;
  Eigen::VectorXcd drive_weights_;   // w_m = B_m(laser)/sqrt(N)
  Eigen::VectorXd re_clamped_;
  Eigen::MatrixXcd inv_den_;         // 1/(D_m + conj(D_n)), clamped
  int clamped_ = 0;
};

// Parallel map evaluation; output index i corresponds to dirs[i].
std::vector<double> intensity_map(const EmissionKernel& kernel, std::span<const Direction> dirs);
std::vector<double> perpendicular_map(const EmissionKernel& kernel, std::span<const Direction> dirs);
std::vector<double> far_field_map(const EmissionKernel& kernel, std::span<const Direction> dirs);
std::vector<double> pair_intensity_map(const EmissionKernel& kernel, const PairSetup& setup,
                                       std::span<const Direction> dirs);
std::vector<std::optional<double>> g2_map(const EmissionKernel& kernel, const PairSetup& setup,
                                          std::span<const Direction> dirs, const Direction& ref);

}  // namespace ringemit
