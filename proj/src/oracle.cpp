#include "ringemit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ringemit/dipole_kernel.hpp"
#include "ringemit/parallel.hpp"

// Brute-force path: dense eigendecomposition of the coupling matrix and a
// literal sum over discretized photon modes. The circulant eigenbasis is
// never used here; only the coupling matrix itself is shared with the
// closed-form module.

namespace ringemit::oracle {

namespace {

const std::complex<double> IM(0.0, 1.0);

struct DenseModes {
  Eigen::VectorXcd lambda;
  Eigen::MatrixXcd vecs, vecs_inv;
  double gamma_col = 0.0;
};

DenseModes decompose(const RingLattice& lattice) {
  Eigen::MatrixXcd j = build_decay_matrix(lattice).coupling;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(j);
  if (es.info() != Eigen::Success) throw std::runtime_error("oracle: eigendecomposition failed");
  DenseModes d;
  d.lambda = es.eigenvalues();
  d.vecs = es.eigenvectors();
  d.vecs_inv = d.vecs.inverse();
  d.gamma_col = d.lambda.real().maxCoeff();
  if (d.lambda.real().minCoeff() <= 0.0)
    throw std::domain_error("oracle: collective mode with nonpositive decay rate");
  return d;
}

double kahan_sum(std::span<const double> xs) {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

Eigen::VectorXcd direction_phases(const RingLattice& lattice, const Direction& dir) {
  int n = lattice.n_sites;
  double st = std::sin(dir.theta);
  double qx = st * std::cos(dir.phi), qy = st * std::sin(dir.phi);
  double kr = k_laser * lattice.radius;
  Eigen::VectorXcd b(n);
  for (int g = 0; g < n; ++g) {
    double ang = lattice.site_angles[g];
    b(g) = std::polar(1.0, -kr * (qx * std::cos(ang) + qy * std::sin(ang)));
  }
  return b;
}

// sum over the two transverse polarizations of (d_hat . e_lambda)^2, d_hat = z
double polarization_weight(const Direction& dir, double angle) {
  auto [e1, e2] = polarization_basis(dir, angle);
  Eigen::Vector3d d(0.0, 0.0, 1.0);
  double k1 = d.dot(e1), k2 = d.dot(e2);
  return k1 * k1 + k2 * k2;
}

void check_bandwidth(double w, double gamma_col) {
  if (w < 50.0 * gamma_col)
    throw std::invalid_argument("mode grid: bandwidth below 50 collective linewidths");
}

}  // namespace

std::pair<Eigen::Vector3d, Eigen::Vector3d> polarization_basis(const Direction& dir, double angle) {
  double st = std::sin(dir.theta), ct = std::cos(dir.theta);
  double sp = std::sin(dir.phi), cp = std::cos(dir.phi);
  Eigen::Vector3d th(ct * cp, ct * sp, -st);
  Eigen::Vector3d ph(-sp, cp, 0.0);
  double ca = std::cos(angle), sa = std::sin(angle);
  return {ca * th + sa * ph, -sa * th + ca * ph};
}

ModeGrid build_mode_grid(const RingLattice& lattice, const AngularGrid& directions,
                         int nodes_per_panel, double bandwidth, double polarization_angle) {
  if (nodes_per_panel < 2) throw std::invalid_argument("mode grid: nodes_per_panel must be >= 2");
  DenseModes dense = decompose(lattice);
  double gcol = dense.gamma_col;
  double max_shift = dense.lambda.imag().cwiseAbs().maxCoeff();
  double w = bandwidth;
  if (w == 0.0)
    w = std::max({100.0, 300.0 * gcol, 2.0 * max_shift + 50.0});
  check_bandwidth(w, gcol);

  // panel breakpoints: every resonance at -Im lambda with half-widths Re lambda
  std::vector<double> pts = {-w, w};
  for (int i = 0; i < dense.lambda.size(); ++i) {
    double center = -dense.lambda(i).imag(), hw = dense.lambda(i).real();
    for (double f : {1.0, 5.0, 25.0}) {
      pts.push_back(center - f * hw);
      pts.push_back(center + f * hw);
    }
  }
  for (double t : {50.0, 100.0, 200.0}) {
    double s = t * std::max(gcol, 1.0);
    pts.push_back(-s);
    pts.push_back(s);
  }
  for (double& p : pts) p = std::clamp(p, -w, w);
  for (double& p : pts) p = std::round(p * 1e9) / 1e9;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<double> gx, gw;
  gauss_legendre(nodes_per_panel, gx, gw);
  ModeGrid grid;
  grid.directions = directions;
  grid.bandwidth = w;
  grid.polarization_angle = polarization_angle;
  for (size_t s = 0; s + 1 < pts.size(); ++s) {
    double a = pts[s], b = pts[s + 1];
    if (b - a < 1e-12) continue;
    for (int i = 0; i < nodes_per_panel; ++i) {
      grid.frequencies.push_back(0.5 * (b - a) * gx[i] + 0.5 * (a + b));
      grid.weights.push_back(0.5 * (b - a) * gw[i]);
    }
  }
  return grid;
}

ModeGrid build_uniform_mode_grid(const RingLattice& lattice, const AngularGrid& directions,
                                 double bandwidth, int n_frequencies, double polarization_angle) {
  if (n_frequencies < 2) throw std::invalid_argument("mode grid: n_frequencies must be >= 2");
  DenseModes dense = decompose(lattice);
  check_bandwidth(bandwidth, dense.gamma_col);
  ModeGrid grid;
  grid.directions = directions;
  grid.bandwidth = bandwidth;
  grid.polarization_angle = polarization_angle;
  double step = 2.0 * bandwidth / n_frequencies;
  for (int i = 0; i < n_frequencies; ++i) {
    grid.frequencies.push_back(-bandwidth + step * (i + 0.5));
    grid.weights.push_back(step);
  }
  return grid;
}

std::vector<double> oracle_single_intensity(const RingLattice& lattice, const LaserDrive& drive,
                                            const SpinWave& state, const ModeGrid& grid) {
  int n = lattice.n_sites;
  if (state.amplitudes.size() != n)
    throw std::invalid_argument("oracle_single_intensity: state size does not match lattice");
  DenseModes dense = decompose(lattice);

  // initial amplitudes carry the laser phases
  Eigen::VectorXcd c(n);
  Eigen::Vector3d klv = drive.wavevector();
  for (int a = 0; a < n; ++a)
    c(a) = state.amplitudes(a) * std::polar(1.0, klv.dot(lattice.positions[a]));
  Eigen::VectorXcd v = dense.vecs_inv * c;

  size_t nt = grid.frequencies.size();
  const auto& dirs = grid.directions.nodes;
  std::vector<double> out(dirs.size());
  parallel_for(dirs.size(), [&](size_t idx) {
    Eigen::VectorXcd u = dense.vecs.transpose() * direction_phases(lattice, dirs[idx]);
    std::vector<double> terms(nt);
    for (size_t t = 0; t < nt; ++t) {
      std::complex<double> amp = 0.0;
      for (int i = 0; i < n; ++i)
        amp += u(i) * v(i) / (dense.lambda(i) + IM * grid.frequencies[t]);
      terms[t] = grid.weights[t] * std::norm(amp);
    }
    double pol = polarization_weight(dirs[idx], grid.polarization_angle);
    out[idx] = 3.0 * gamma_total / (8.0 * std::numbers::pi * std::numbers::pi) * pol * kahan_sum(terms);
  });
  return out;
}

double oracle_pair_correlation(const RingLattice& lattice, const LaserDrive& drive,
                               const TwoExcitationAmplitude& state, const ModeGrid& grid,
                               const Direction& a, const Direction& b) {
  int n = lattice.n_sites;
  if (state.psi.rows() != n || state.psi.cols() != n)
    throw std::invalid_argument("oracle_pair_correlation: state size does not match lattice");
  DenseModes dense = decompose(lattice);

  Eigen::VectorXcd phases(n);
  Eigen::Vector3d klv = drive.wavevector();
  for (int k = 0; k < n; ++k) phases(k) = std::polar(1.0, klv.dot(lattice.positions[k]));
  Eigen::MatrixXcd psi_l = phases.asDiagonal() * state.psi * phases.asDiagonal();
  Eigen::MatrixXcd s = dense.vecs_inv * psi_l * dense.vecs_inv.transpose();

  size_t nt = grid.frequencies.size();
  auto resolvent_rows = [&](const Direction& dir) {
    Eigen::VectorXcd u = dense.vecs.transpose() * direction_phases(lattice, dir);
    Eigen::MatrixXcd f(nt, n);
    for (size_t t = 0; t < nt; ++t)
      for (int i = 0; i < n; ++i)
        f(t, i) = u(i) / (dense.lambda(i) + IM * grid.frequencies[t]);
    return f;
  };
  Eigen::MatrixXcd fa = resolvent_rows(a);
  Eigen::MatrixXcd fb = resolvent_rows(b);
  // symmetrized two-photon amplitude on the frequency grid
  Eigen::MatrixXcd t2 = 2.0 * (fa * s) * fb.transpose();

  std::vector<double> row_sums(nt);
  parallel_for(nt, [&](size_t t) {
    std::vector<double> terms(nt);
    for (size_t tp = 0; tp < nt; ++tp)
      terms[tp] = grid.weights[tp] * std::norm(t2(t, tp));
    row_sums[t] = grid.weights[t] * kahan_sum(terms);
  });
  double pref = 3.0 * gamma_total / (8.0 * std::numbers::pi * std::numbers::pi);
  double pol = polarization_weight(a, grid.polarization_angle) *
               polarization_weight(b, grid.polarization_angle);
  return pref * pref * pol * kahan_sum(row_sums);
}

}  // namespace ringemit::oracle
