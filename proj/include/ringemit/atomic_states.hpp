#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ringemit {

// Single-excitation amplitudes over sites; the laser phase factors are applied
// by the emission and oracle modules, so the default driven wave is uniform.
struct SpinWave {
  Eigen::VectorXcd amplitudes;
};

SpinWave spin_wave(int n_sites);

// Symmetric two-excitation amplitude psi(k, k') over site pairs, bosonic
// normalization 2*sum |psi|^2 = 1.
struct TwoExcitationAmplitude {
  Eigen::MatrixXcd psi;
};

// Prepared pair state, psi(k,k') = sin((2*pi/N)(p - 1/2)|k - k'|)/N for
// 1 <= p <= floor(N/2). Normalized as written: sum_d sin^2((2*pi/N)(p-1/2)d)
// over d = 1..N-1 equals N/2 because 2p - 1 is never a multiple of N in range.
TwoExcitationAmplitude pair_state(int n_sites, int p);

// Product of two spin waves with angular momenta +l and -l:
// psi(k,k') = cos(l(phi_k - phi_k')) / (N*sqrt(1 + delta)), delta = 1 iff
// 2l = 0 mod N (self-conjugate modes l = 0 and l = N/2). 0 <= l <= floor(N/2).
TwoExcitationAmplitude momentum_mode_pair(int n_sites, int l);

// <a|b> = 2*sum conj(a)*b; throws on size mismatch.
std::complex<double> bosonic_overlap(const TwoExcitationAmplitude& a, const TwoExcitationAmplitude& b);

// Rydberg-dressing parameters used to prepare the pair states:
// c6 in gamma_total * lambda_L^6, rabi_gr the ground-Rydberg Rabi rate.
struct PreparationParams {
  double c6 = 0.0;
  double rabi_gr = 0.0;
};

// r_b = (c6 / rabi_gr)^(1/6)
double blockade_radius(const PreparationParams& prep);

// Fully blockaded ensemble: enhanced rate sqrt(N)*rabi_gr and the pi-pulse time.
struct CollectiveRabi {
  double rabi = 0.0;
  double pulse_time = 0.0;
};

CollectiveRabi collective_rabi(const PreparationParams& prep, int n_sites);

}  // namespace ringemit
