#pragma once

#include <numbers>
#include <vector>
#include <span>
#include <Eigen/Dense>

namespace ringemit {

// Units: lengths in laser wavelengths, rates in the single-atom decay rate.
inline constexpr double k_laser = 2.0 * std::numbers::pi;   // 2*pi/lambda_L with lambda_L = 1
inline constexpr double gamma_total = 1.0;          // single-atom decay rate

inline constexpr const char* library_version = "1.0.0";

// Emission direction (theta from +z, azimuth phi).
struct Direction {
  double theta = 0.0;
  double phi = 0.0;
  Eigen::Vector3d unit() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  }
};

// Driving laser: propagation direction only; |k_L| = k_laser, Rabi rate in units of gamma_total.
struct LaserDrive {
  double theta_l = 0.0;
  double phi_l = 0.0;
  Eigen::Vector3d wavevector() const { return k_laser * Direction{theta_l, phi_l}.unit(); }
};

// N emitters equally spaced on a circle in the z = 0 plane.
// Spacing a is the arc length between neighbours, so radius = a*N/(2*pi)
// and k_laser * radius = a * N exactly.
struct RingLattice {
  int n_sites = 0;
  double spacing = 0.0;
  double radius = 0.0;
  std::vector<double> site_angles;              // phi_alpha = 2*pi*alpha/N
  std::vector<Eigen::Vector3d> positions;
};

RingLattice build_ring(int n_sites, double spacing);

// Product quadrature for the full sphere: Gauss-Legendre in cos(theta) times a
// uniform phi grid. Node ordering is theta-major (index = i*n_phi + j), theta
// ascending. Exact for integrands polynomial in cos(theta) up to degree
// 2*n_theta - 1 and band-limited in phi below n_phi.
struct AngularGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> thetas;                   // size n_theta
  std::vector<double> phis;                     // size n_phi
  std::vector<Direction> nodes;                 // size n_theta*n_phi
  std::vector<double> weights;                  // solid-angle weights, same order
};

AngularGrid build_angular_grid(int n_theta, int n_phi);

// Uniform plotting grid: midpoint thetas, phi_j = 2*pi*j/n_phi. Weights are
// exact cell solid angles (they telescope to 4*pi), but midpoint sampling is
// only O(h^2) accurate, so this is for figure datasets and peak picking, not
// for quadrature totals. AngularGrid stays the quadrature type.
struct MapGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<Direction> nodes;                 // theta-major
  std::vector<double> weights;
};

MapGrid build_map_grid(int n_theta, int n_phi);

// Strict local maxima on a map grid: value greater than all 8 neighbours,
// periodic in phi, theta edge rows excluded. Sorted by value, largest first.
struct GridPeak {
  int i = 0, j = 0;
  double theta = 0.0, phi = 0.0, value = 0.0;
};

std::vector<GridPeak> local_maxima(const MapGrid& grid, std::span<const double> values);

// Gauss-Legendre rule on [-1, 1] (Newton on the Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace ringemit
