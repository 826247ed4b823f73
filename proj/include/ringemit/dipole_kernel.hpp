#pragma once

#include <complex>
#include <Eigen/Dense>

#include "ringemit/geometry.hpp"

namespace ringemit {

// Pairwise dipole-dipole rates for parallel dipoles d || z at separation
// kappa = k_laser * r; cos_dr = d_hat . r_hat. On the ring cos_dr = 0.
// gamma_pair(0) = gamma_total by the small-argument limit; omega_pair diverges
// as kappa -> 0 and rejects kappa = 0.
double gamma_pair(double kappa, double cos_dr);
double omega_pair(double kappa, double cos_dr);

struct DecayMatrix {
  Eigen::MatrixXd gamma;      // symmetric, gamma(a,a) = gamma_total
  Eigen::MatrixXd omega;      // symmetric, omega(a,a) = 0
  Eigen::MatrixXcd coupling;  // gamma + i*omega
};

DecayMatrix build_decay_matrix(const RingLattice& lattice);

// DFT eigenbasis of the circulant coupling matrix:
//   modes(gamma, k) = exp(i*2*pi*gamma*k/N)/sqrt(N),
//   rates(k)        = sum_n coupling(0, n) * exp(i*2*pi*k*n/N).
// Re rates(k) is the collective decay rate of mode k, Im the collective shift.
// Throws if the input is not circulant (row-shift residual above 1e-9).
struct CollectiveModeBasis {
  Eigen::MatrixXcd modes;
  Eigen::VectorXcd rates;
};

CollectiveModeBasis circulant_modes(const DecayMatrix& decay);

// Largest collective decay rate, max_k Re rates(k).
double degree_of_collectivity(const CollectiveModeBasis& basis);

// Modes with Re rates below this floor (in units of gamma_total) are clamped
// to it wherever they enter a denominator; callers emit a warning.
inline constexpr double subradiant_floor = 1e-12;

}  // namespace ringemit
