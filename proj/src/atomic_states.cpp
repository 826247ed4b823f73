#include "ringemit/atomic_states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringemit {

SpinWave spin_wave(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("spin_wave: n_sites must be >= 1");
  SpinWave s;
  s.amplitudes = Eigen::VectorXcd::Constant(n_sites, 1.0 / std::sqrt(static_cast<double>(n_sites)));
  return s;
}

TwoExcitationAmplitude pair_state(int n_sites, int p) {
  if (n_sites < 2) throw std::invalid_argument("pair_state: n_sites must be >= 2");
  if (p < 1 || p > n_sites / 2) throw std::invalid_argument("pair_state: p must be in [1, N/2]");
  TwoExcitationAmplitude t;
  t.psi.resize(n_sites, n_sites);
  double freq = 2.0 * std::numbers::pi / n_sites * (p - 0.5);
  for (int k = 0; k < n_sites; ++k)
    for (int kp = 0; kp < n_sites; ++kp)
      t.psi(k, kp) = std::sin(freq * std::abs(k - kp)) / n_sites;
  return t;
}

TwoExcitationAmplitude momentum_mode_pair(int n_sites, int l) {
  if (n_sites < 1) throw std::invalid_argument("momentum_mode_pair: n_sites must be >= 1");
  if (l < 0 || l > n_sites / 2) throw std::invalid_argument("momentum_mode_pair: l must be in [0, N/2]");
  TwoExcitationAmplitude t;
  t.psi.resize(n_sites, n_sites);
  double delta = (2 * l) % n_sites == 0 ? 1.0 : 0.0;
  double norm = n_sites * std::sqrt(1.0 + delta);
  for (int k = 0; k < n_sites; ++k)
    for (int kp = 0; kp < n_sites; ++kp) {
      double dphi = 2.0 * std::numbers::pi * (k - kp) / n_sites;
      t.psi(k, kp) = std::cos(l * dphi) / norm;
    }
  return t;
}

std::complex<double> bosonic_overlap(const TwoExcitationAmplitude& a, const TwoExcitationAmplitude& b) {
  if (a.psi.rows() != b.psi.rows() || a.psi.cols() != b.psi.cols())
    throw std::invalid_argument("bosonic_overlap: amplitude sizes differ");
  return 2.0 * (a.psi.conjugate().cwiseProduct(b.psi)).sum();
}

double blockade_radius(const PreparationParams& prep) {
  if (!(prep.c6 > 0.0) || !(prep.rabi_gr > 0.0))
    throw std::invalid_argument("blockade_radius: c6 and rabi_gr must be positive");
  return std::pow(prep.c6 / prep.rabi_gr, 1.0 / 6.0);
}

CollectiveRabi collective_rabi(const PreparationParams& prep, int n_sites) {
  if (!(prep.rabi_gr > 0.0)) throw std::invalid_argument("collective_rabi: rabi_gr must be positive");
  if (n_sites < 1) throw std::invalid_argument("collective_rabi: n_sites must be >= 1");
  CollectiveRabi c;
  c.rabi = std::sqrt(static_cast<double>(n_sites)) * prep.rabi_gr;
  c.pulse_time = std::numbers::pi / c.rabi;
  return c;
}

}  // namespace ringemit
