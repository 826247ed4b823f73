#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ringemit/geometry.hpp"

using namespace ringemit;
namespace nums = std::numbers;

TEST_CASE("ring examples") {
  RingLattice r4 = build_ring(4, nums::pi / 2.0);
  CHECK(r4.radius == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r4.positions[0].isApprox(Eigen::Vector3d(1, 0, 0), 1e-14));
  CHECK(r4.positions[1].isApprox(Eigen::Vector3d(0, 1, 0), 1e-14));
  CHECK(r4.positions[2].isApprox(Eigen::Vector3d(-1, 0, 0), 1e-14));
  CHECK(r4.positions[3].isApprox(Eigen::Vector3d(0, -1, 0), 1e-14));

  RingLattice r1 = build_ring(1, 1.0);
  CHECK(r1.positions.size() == 1);
  CHECK(r1.positions[0].isApprox(Eigen::Vector3d(1.0 / (2.0 * nums::pi), 0, 0), 1e-15));

  CHECK(build_ring(15, 1.0).radius == doctest::Approx(2.3873).epsilon(1e-4));
}

TEST_CASE("ring invariants") {
  for (int n : {1, 2, 5, 16, 41}) {
    RingLattice lat = build_ring(n, 0.7);
    for (int a = 0; a < n; ++a) {
      CHECK(lat.positions[a].z() == 0.0);  // exactly planar
      CHECK(lat.positions[a].norm() == doctest::Approx(lat.radius).epsilon(1e-14));
      for (int b = 0; b < n; ++b) {
        double chord = 2.0 * lat.radius * std::sin(nums::pi * std::abs(a - b) / n);
        CHECK((lat.positions[a] - lat.positions[b]).norm() == doctest::Approx(chord).epsilon(1e-12));
      }
    }
    // every site sees the same multiset of distances
    std::vector<double> ref;
    for (int b = 0; b < n; ++b) ref.push_back((lat.positions[0] - lat.positions[b]).norm());
    std::sort(ref.begin(), ref.end());
    for (int a = 1; a < n; ++a) {
      std::vector<double> row;
      for (int b = 0; b < n; ++b) row.push_back((lat.positions[a] - lat.positions[b]).norm());
      std::sort(row.begin(), row.end());
      for (int b = 0; b < n; ++b) CHECK(std::abs(row[b] - ref[b]) < 1e-12);
    }
  }
}

TEST_CASE("ring rejects bad input") {
  CHECK_THROWS_AS(build_ring(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_ring(-3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_ring(5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_ring(5, -1.0), std::invalid_argument);
}

TEST_CASE("direction unit vectors") {
  CHECK(Direction{0.0, 0.0}.unit().isApprox(Eigen::Vector3d(0, 0, 1), 1e-15));
  CHECK(Direction{nums::pi / 2.0, nums::pi / 2.0}.unit().isApprox(Eigen::Vector3d(0, 1, 0), 1e-15));
  for (double th : {0.3, 1.2, 2.9})
    for (double ph : {0.0, 2.2, 5.9}) CHECK(Direction{th, ph}.unit().norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauss-legendre five point rule") {
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  CHECK(x[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(x[3] == doctest::Approx(0.5384693101056831).epsilon(1e-14));
  CHECK(x[4] == doctest::Approx(0.9061798459386640).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(0.5688888888888889).epsilon(1e-14));
  CHECK(w[3] == doctest::Approx(0.4786286704993665).epsilon(1e-14));
  CHECK(w[4] == doctest::Approx(0.2369268850561891).epsilon(1e-14));
}

TEST_CASE("angular grid weights and quadrature") {
  AngularGrid g = build_angular_grid(64, 64);
  double total = 0.0, c1 = 0.0, csin2 = 0.0, ccos = 0.0;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    total += g.weights[i];
    c1 += g.weights[i];
    double st = std::sin(g.nodes[i].theta);
    csin2 += g.weights[i] * st * st;
    ccos += g.weights[i] * std::cos(g.nodes[i].theta);
    CHECK(g.weights[i] > 0.0);
  }
  CHECK(std::abs(total - 4.0 * nums::pi) < 1e-12);
  CHECK(std::abs(c1 - 4.0 * nums::pi) < 1e-12);
  CHECK(std::abs(csin2 - 8.0 * nums::pi / 3.0) < 1e-8);
  CHECK(std::abs(ccos) < 1e-12);
}

TEST_CASE("angular grid polynomial exactness to degree 2n-1") {
  int nt = 6;
  AngularGrid g = build_angular_grid(nt, 8);
  for (int k = 0; k <= 2 * nt - 1; ++k) {
    double acc = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i)
      acc += g.weights[i] * std::pow(std::cos(g.nodes[i].theta), k);
    double exact = k % 2 == 0 ? 4.0 * nums::pi / (k + 1) : 0.0;
    CHECK(std::abs(acc - exact) < 1e-10);
  }
}

TEST_CASE("angular grid rejects degenerate sizes") {
  CHECK_THROWS_AS(build_angular_grid(1, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_angular_grid(8, 3), std::invalid_argument);
}

TEST_CASE("angular grid ordering is theta-major ascending") {
  AngularGrid g = build_angular_grid(4, 6);
  for (int i = 1; i < g.n_theta; ++i) CHECK(g.thetas[i] > g.thetas[i - 1]);
  for (int i = 0; i < g.n_theta; ++i)
    for (int j = 0; j < g.n_phi; ++j) {
      const Direction& d = g.nodes[static_cast<size_t>(i) * g.n_phi + j];
      CHECK(d.theta == g.thetas[i]);
      CHECK(d.phi == g.phis[j]);
    }
}

TEST_CASE("map grid cell weights telescope to the full sphere") {
  MapGrid g = build_map_grid(48, 48);
  double total = 0.0;
  for (double w : g.weights) total += w;
  CHECK(std::abs(total - 4.0 * nums::pi) < 1e-12);
  CHECK(g.thetas[0] == doctest::Approx(nums::pi / 96.0).epsilon(1e-14));
  CHECK(g.phis[0] == 0.0);
}

TEST_CASE("grid construction is deterministic") {
  AngularGrid a = build_angular_grid(16, 20), b = build_angular_grid(16, 20);
  for (size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].theta == b.nodes[i].theta);
    CHECK(a.weights[i] == b.weights[i]);
  }
}

TEST_CASE("local maxima on a synthetic field") {
  MapGrid g = build_map_grid(32, 32);
  std::vector<double> v(g.nodes.size());
  for (size_t i = 0; i < v.size(); ++i) {
    double th = g.nodes[i].theta, ph = g.nodes[i].phi;
    // two bumps, the larger one centred on the phi seam to exercise wraparound
    v[i] = std::exp(-10.0 * (std::pow(th - 1.0, 2) + std::pow(std::remainder(ph, 2 * nums::pi), 2))) +
           0.5 * std::exp(-10.0 * (std::pow(th - 2.0, 2) + std::pow(ph - 3.0, 2)));
  }
  auto peaks = local_maxima(g, v);
  REQUIRE(peaks.size() >= 2);
  CHECK(peaks[0].value > peaks[1].value);
  CHECK(std::abs(peaks[0].theta - 1.0) < 0.1);
  CHECK(std::min(peaks[0].phi, 2 * nums::pi - peaks[0].phi) < 0.1);
  CHECK(std::abs(peaks[1].theta - 2.0) < 0.1);
  CHECK(std::abs(peaks[1].phi - 3.0) < 0.1);
}
