#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ringemit/atomic_states.hpp"
#include "ringemit/dipole_kernel.hpp"
#include "ringemit/emission.hpp"
#include "ringemit/geometry.hpp"
#include "ringemit/oracle.hpp"

using namespace ringemit;
namespace nums = std::numbers;

namespace {

double rel_l2(const AngularGrid& grid, const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += grid.weights[i] * (a[i] - b[i]) * (a[i] - b[i]);
    den += grid.weights[i] * b[i] * b[i];
  }
  return std::sqrt(num / den);
}

std::vector<std::pair<Direction, Direction>> random_pairs(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> th(0.3, nums::pi - 0.3), ph(0.0, 2.0 * nums::pi);
  std::vector<std::pair<Direction, Direction>> out;
  for (int i = 0; i < count; ++i)
    out.push_back({Direction{th(rng), ph(rng)}, Direction{th(rng), ph(rng)}});
  return out;
}

}  // namespace

TEST_CASE("mode grid construction") {
  RingLattice lat = build_ring(10, 0.56);
  AngularGrid dirs = build_angular_grid(8, 8);

  SUBCASE("frequency weights tile the band") {
    oracle::ModeGrid panelled = oracle::build_mode_grid(lat, dirs);
    double sum = 0.0;
    for (double w : panelled.weights) sum += w;
    CHECK(std::abs(sum - 2.0 * panelled.bandwidth) < 1e-9 * panelled.bandwidth);
    CHECK(panelled.bandwidth >= 50.0 * degree_of_collectivity(circulant_modes(build_decay_matrix(lat))));

    oracle::ModeGrid uniform = oracle::build_uniform_mode_grid(lat, dirs, 500.0, 400);
    sum = 0.0;
    for (double w : uniform.weights) sum += w;
    CHECK(std::abs(sum - 1000.0) < 1e-9 * 500.0);
    CHECK(uniform.frequencies.size() == 400);
  }

  SUBCASE("polarizations are transverse orthonormal pairs") {
    for (double angle : {0.0, 0.7368}) {
      for (const Direction& d : dirs.nodes) {
        auto [e1, e2] = oracle::polarization_basis(d, angle);
        Eigen::Vector3d q = d.unit();
        CHECK(std::abs(e1.dot(q)) < 1e-12);
        CHECK(std::abs(e2.dot(q)) < 1e-12);
        CHECK(std::abs(e1.norm() - 1.0) < 1e-12);
        CHECK(std::abs(e2.norm() - 1.0) < 1e-12);
        CHECK(std::abs(e1.dot(e2)) < 1e-12);
      }
    }
  }

  SUBCASE("bad parameters are rejected") {
    CHECK_THROWS_AS(oracle::build_mode_grid(lat, dirs, 1), std::invalid_argument);
    CHECK_THROWS_AS(oracle::build_uniform_mode_grid(lat, dirs, 500.0, 1), std::invalid_argument);

    // (10, 0.1) is strongly collective; 100 linewidths is too narrow a band
    RingLattice tight = build_ring(10, 0.1);
    CHECK_THROWS_AS(oracle::build_mode_grid(tight, dirs, 16, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(oracle::build_uniform_mode_grid(tight, dirs, 100.0, 400), std::invalid_argument);
  }

  SUBCASE("degenerate-rate lattices are refused") {
    // deep-subwavelength many-atom rings have dark modes whose computed rates
    // round to zero or below; the brute-force path cannot integrate those
    RingLattice dark = build_ring(30, 0.05);
    CHECK_THROWS_AS(oracle::build_mode_grid(dark, dirs), std::domain_error);
    oracle::ModeGrid tiny;
    tiny.directions = dirs;
    tiny.frequencies = {-1.0, 1.0};
    tiny.weights = {1.0, 1.0};
    tiny.bandwidth = 1.0;
    CHECK_THROWS_AS(oracle::oracle_single_intensity(dark, {0.0, 0.0}, spin_wave(30), tiny),
                    std::domain_error);
  }
}

TEST_CASE("single-photon intensity against closed forms") {
  SUBCASE("single atom, uniform frequency grid") {
    RingLattice lat = build_ring(1, 1.0);
    AngularGrid dirs = build_angular_grid(16, 16);
    oracle::ModeGrid grid = oracle::build_uniform_mode_grid(lat, dirs, 100.0, 400);
    std::vector<double> brute =
        oracle::oracle_single_intensity(lat, {0.0, 0.0}, spin_wave(1), grid);
    std::vector<double> dipole(dirs.nodes.size());
    for (size_t i = 0; i < dirs.nodes.size(); ++i) {
      double st = std::sin(dirs.nodes[i].theta);
      dipole[i] = 3.0 * st * st / (8.0 * nums::pi);
    }
    double err = rel_l2(dirs, brute, dipole);
    CHECK(err < 0.01);
    CHECK(err > 0.004);  // dominated by the truncated Lorentzian tails, ~2/(pi*W)
  }

  SUBCASE("single atom, panelled frequency grid") {
    RingLattice lat = build_ring(1, 1.0);
    AngularGrid dirs = build_angular_grid(16, 16);
    oracle::ModeGrid grid = oracle::build_mode_grid(lat, dirs);
    std::vector<double> brute =
        oracle::oracle_single_intensity(lat, {0.0, 0.0}, spin_wave(1), grid);
    std::vector<double> dipole(dirs.nodes.size());
    for (size_t i = 0; i < dirs.nodes.size(); ++i) {
      double st = std::sin(dirs.nodes[i].theta);
      dipole[i] = 3.0 * st * st / (8.0 * nums::pi);
    }
    CHECK(rel_l2(dirs, brute, dipole) < 0.005);
  }

  SUBCASE("perpendicular drive") {
    RingLattice lat = build_ring(10, 0.56);
    AngularGrid dirs = build_angular_grid(24, 24);
    oracle::ModeGrid grid = oracle::build_mode_grid(lat, dirs);
    std::vector<double> brute =
        oracle::oracle_single_intensity(lat, {0.0, 0.0}, spin_wave(10), grid);
    EmissionKernel k(lat, {0.0, 0.0});
    CHECK(rel_l2(dirs, brute, perpendicular_map(k, dirs.nodes)) < 0.02);
  }

  SUBCASE("tilted drive") {
    RingLattice lat = build_ring(15, 0.5);
    AngularGrid dirs = build_angular_grid(24, 24);
    oracle::ModeGrid grid = oracle::build_mode_grid(lat, dirs);
    std::vector<double> brute =
        oracle::oracle_single_intensity(lat, {nums::pi / 4, nums::pi}, spin_wave(15), grid);
    EmissionKernel k(lat, {nums::pi / 4, nums::pi});
    CHECK(rel_l2(dirs, brute, intensity_map(k, dirs.nodes)) < 0.02);
  }

  SUBCASE("halving the panel resolution barely moves the answer") {
    RingLattice lat = build_ring(10, 0.56);
    AngularGrid dirs = build_angular_grid(8, 8);
    oracle::ModeGrid coarse = oracle::build_mode_grid(lat, dirs, 8);
    oracle::ModeGrid fine = oracle::build_mode_grid(lat, dirs, 16);
    std::vector<double> ic =
        oracle::oracle_single_intensity(lat, {0.0, 0.0}, spin_wave(10), coarse);
    std::vector<double> fi = oracle::oracle_single_intensity(lat, {0.0, 0.0}, spin_wave(10), fine);
    for (size_t i = 0; i < ic.size(); ++i)
      CHECK(std::abs(ic[i] - fi[i]) < 0.005 * std::max(std::abs(fi[i]), 1e-6));
  }

  SUBCASE("invariant under polarization basis rotation") {
    RingLattice lat = build_ring(15, 0.5);
    AngularGrid dirs = build_angular_grid(8, 8);
    oracle::ModeGrid g0 = oracle::build_mode_grid(lat, dirs, 16, 0.0, 0.0);
    oracle::ModeGrid g1 = oracle::build_mode_grid(lat, dirs, 16, 0.0, 0.7368);
    std::vector<double> i0 =
        oracle::oracle_single_intensity(lat, {nums::pi / 4, nums::pi}, spin_wave(15), g0);
    std::vector<double> i1 =
        oracle::oracle_single_intensity(lat, {nums::pi / 4, nums::pi}, spin_wave(15), g1);
    for (size_t i = 0; i < i0.size(); ++i)
      CHECK(std::abs(i0[i] - i1[i]) < 1e-12 * std::max(std::abs(i0[i]), 1e-9));
  }
}

TEST_CASE("pair correlations against closed forms") {
  AngularGrid dirs = build_angular_grid(8, 8);

  SUBCASE("product amplitude factorizes") {
    int n = 6;
    RingLattice lat = build_ring(n, 0.8);
    LaserDrive drive{0.5, 0.2};
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> dis(-1.0, 1.0);
    Eigen::VectorXcd u(n);
    for (int i = 0; i < n; ++i) u(i) = std::complex<double>(dis(rng), dis(rng));
    u /= u.norm() * std::pow(2.0, 0.25);
    TwoExcitationAmplitude prod;
    prod.psi = u * u.transpose();

    EmissionKernel k(lat, drive);
    PairSetup setup = k.pair_setup(prod);
    oracle::ModeGrid grid = oracle::build_mode_grid(lat, dirs);
    for (auto [a, b] : random_pairs(4, 73)) {
      double brute = oracle::oracle_pair_correlation(lat, drive, prod, grid, a, b);
      double analytic = 0.5 * k.pair_intensity(setup, a) * k.pair_intensity(setup, b);
      CHECK(std::abs(brute - analytic) < 0.02 * std::abs(analytic));
    }
  }

  SUBCASE("prepared pair state matches the closed kernel form") {
    int n = 8;
    RingLattice lat = build_ring(n, 0.5);
    LaserDrive drive{nums::pi / 4, nums::pi};
    TwoExcitationAmplitude state = pair_state(n, 1);
    EmissionKernel k(lat, drive);
    PairSetup setup = k.pair_setup(state);
    oracle::ModeGrid grid = oracle::build_mode_grid(lat, dirs);
    for (auto [a, b] : random_pairs(10, 79)) {
      double brute = oracle::oracle_pair_correlation(lat, drive, state, grid, a, b);
      double closed = k.pair_correlation_G(setup, a, b);
      CHECK(std::abs(brute - closed) < 0.03 * std::max(std::abs(closed), 1e-6));
    }
  }

  SUBCASE("exchange symmetry") {
    int n = 8;
    RingLattice lat = build_ring(n, 0.5);
    LaserDrive drive{nums::pi / 4, nums::pi};
    TwoExcitationAmplitude state = pair_state(n, 2);
    oracle::ModeGrid grid = oracle::build_mode_grid(lat, dirs);
    for (auto [a, b] : random_pairs(3, 83)) {
      double ab = oracle::oracle_pair_correlation(lat, drive, state, grid, a, b);
      double ba = oracle::oracle_pair_correlation(lat, drive, state, grid, b, a);
      CHECK(std::abs(ab - ba) < 1e-10 * std::max(std::abs(ab), 1e-6));
    }
  }

  SUBCASE("invariant under polarization basis rotation") {
    int n = 6;
    RingLattice lat = build_ring(n, 0.8);
    LaserDrive drive{0.5, 0.2};
    TwoExcitationAmplitude state = pair_state(n, 2);
    oracle::ModeGrid g0 = oracle::build_mode_grid(lat, dirs, 16, 0.0, 0.0);
    oracle::ModeGrid g1 = oracle::build_mode_grid(lat, dirs, 16, 0.0, 1.41);
    for (auto [a, b] : random_pairs(2, 89)) {
      double v0 = oracle::oracle_pair_correlation(lat, drive, state, g0, a, b);
      double v1 = oracle::oracle_pair_correlation(lat, drive, state, g1, a, b);
      CHECK(std::abs(v0 - v1) < 1e-12 * std::max(std::abs(v0), 1e-9));
    }
  }
}
