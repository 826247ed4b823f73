#pragma once

#include <span>
#include <utility>
#include <vector>
#include <Eigen/Dense>

#include "ringemit/atomic_states.hpp"
#include "ringemit/geometry.hpp"

namespace ringemit::oracle {

// Explicit photon-mode discretization: directions x frequencies x two
// transverse polarizations. Frequencies are measured from the laser line in
// units of gamma_total and span [-bandwidth, bandwidth]; their weights sum to
// 2*bandwidth. The transverse basis is (theta_hat, phi_hat) rotated by
// polarization_angle about the propagation axis; physics is invariant under
// that rotation, which the tests exercise.
struct ModeGrid {
  AngularGrid directions;
  std::vector<double> frequencies;
  std::vector<double> weights;
  double bandwidth = 0.0;
  double polarization_angle = 0.0;
};

std::pair<Eigen::Vector3d, Eigen::Vector3d> polarization_basis(const Direction& dir, double angle);

// Panelled Gauss-Legendre frequency grid with breakpoints at every collective
// resonance (shift +- {1,5,25} linewidths from the dense spectrum) plus
// geometric tail panels. bandwidth = 0 picks
// max(100, 300*Gamma_col, 2*max|shift| + 50); an explicit bandwidth below
// 50*Gamma_col is rejected.
ModeGrid build_mode_grid(const RingLattice& lattice, const AngularGrid& directions,
                         int nodes_per_panel = 16, double bandwidth = 0.0,
                         double polarization_angle = 0.0);

// Uniformly spaced frequency nodes (midpoint weights); same bandwidth check.
ModeGrid build_uniform_mode_grid(const RingLattice& lattice, const AngularGrid& directions,
                                 double bandwidth, int n_frequencies,
                                 double polarization_angle = 0.0);

// Brute-force single-photon angular density: dense (non-circulant)
// eigendecomposition of the coupling matrix, photon amplitude per explicit
// mode, |amplitude|^2 summed over polarizations and integrated over the
// frequency grid. Output is ordered like grid.directions.nodes and normalized
// with the same convention as the closed forms.
std::vector<double> oracle_single_intensity(const RingLattice& lattice, const LaserDrive& drive,
                                            const SpinWave& state, const ModeGrid& grid);

// Brute-force G(A, B) from the explicit symmetrized two-photon amplitude
// 2 sum_kk' psi_kk' g_k(mode) g_k'(mode'), double frequency integration.
double oracle_pair_correlation(const RingLattice& lattice, const LaserDrive& drive,
                               const TwoExcitationAmplitude& state, const ModeGrid& grid,
                               const Direction& a, const Direction& b);

}  // namespace ringemit::oracle
