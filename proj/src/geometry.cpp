#include "ringemit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringemit {

RingLattice build_ring(int n_sites, double spacing) {
  if (n_sites < 1) throw std::invalid_argument("build_ring: n_sites must be >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("build_ring: spacing must be positive");
  RingLattice lat;
  lat.n_sites = n_sites;
  lat.spacing = spacing;
  lat.radius = spacing * n_sites / (2.0 * std::numbers::pi);
  lat.site_angles.resize(n_sites);
  lat.positions.resize(n_sites);
  for (int a = 0; a < n_sites; ++a) {
    double ang = 2.0 * std::numbers::pi * a / n_sites;
    lat.site_angles[a] = ang;
    lat.positions[a] = {lat.radius * std::cos(ang), lat.radius * std::sin(ang), 0.0};
  }
  return lat;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

AngularGrid build_angular_grid(int n_theta, int n_phi) {
  if (n_theta < 2) throw std::invalid_argument("build_angular_grid: n_theta must be >= 2");
  if (n_phi < 4) throw std::invalid_argument("build_angular_grid: n_phi must be >= 4");
  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);
  AngularGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  g.thetas.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) g.thetas[i] = std::acos(x[n_theta - 1 - i]);  // theta ascending
  double dphi = 2.0 * std::numbers::pi / n_phi;
  g.phis.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) g.phis[j] = dphi * j;
  g.nodes.resize(static_cast<size_t>(n_theta) * n_phi);
  g.weights.resize(g.nodes.size());
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      size_t idx = static_cast<size_t>(i) * n_phi + j;
      g.nodes[idx] = {g.thetas[i], g.phis[j]};
      g.weights[idx] = w[n_theta - 1 - i] * dphi;
    }
  return g;
}

MapGrid build_map_grid(int n_theta, int n_phi) {
  if (n_theta < 2) throw std::invalid_argument("build_map_grid: n_theta must be >= 2");
  if (n_phi < 4) throw std::invalid_argument("build_map_grid: n_phi must be >= 4");
  MapGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  double dth = std::numbers::pi / n_theta;
  double dphi = 2.0 * std::numbers::pi / n_phi;
  g.thetas.resize(n_theta);
  g.phis.resize(n_phi);
  for (int i = 0; i < n_theta; ++i) g.thetas[i] = dth * (i + 0.5);
  for (int j = 0; j < n_phi; ++j) g.phis[j] = dphi * j;
  g.nodes.resize(static_cast<size_t>(n_theta) * n_phi);
  g.weights.resize(g.nodes.size());
  for (int i = 0; i < n_theta; ++i) {
    double cell = dphi * (std::cos(dth * i) - std::cos(dth * (i + 1)));
    for (int j = 0; j < n_phi; ++j) {
      size_t idx = static_cast<size_t>(i) * n_phi + j;
      g.nodes[idx] = {g.thetas[i], g.phis[j]};
      g.weights[idx] = cell;
    }
  }
  return g;
}

std::vector<GridPeak> local_maxima(const MapGrid& grid, std::span<const double> values) {
  if (values.size() != grid.nodes.size())
    throw std::invalid_argument("local_maxima: value count does not match grid");
  std::vector<GridPeak> peaks;
  int nt = grid.n_theta, np = grid.n_phi;
  auto at = [&](int i, int j) { return values[static_cast<size_t>(i) * np + ((j % np) + np) % np]; };
  for (int i = 1; i < nt - 1; ++i)
    for (int j = 0; j < np; ++j) {
      double v = at(i, j);
      bool strict = true;
      for (int di = -1; di <= 1 && strict; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (at(i + di, j + dj) >= v) {
            strict = false;
            break;
          }
        }
      if (strict) peaks.push_back({i, j, grid.thetas[i], grid.phis[j], v});
    }
  std::sort(peaks.begin(), peaks.end(), [](const GridPeak& a, const GridPeak& b) { return a.value > b.value; });
  return peaks;
}

}  // namespace ringemit
