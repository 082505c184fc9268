#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vdws/coupling.hpp"
#include "vdws/eigen.hpp"
#include "vdws/physics.hpp"

using namespace vdws;

namespace {

std::vector<double> random_symmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = dist(rng);
      a[static_cast<std::size_t>(i) * n + j] = v;
      a[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return a;
}

double trace(const std::vector<double>& a, int n) {
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += a[static_cast<std::size_t>(i) * n + i];
  return t;
}

}  // namespace

TEST_CASE("diagonal matrix returns its diagonal exactly") {
  const int n = 12;
  std::vector<double> a(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i) * n + i] = isolated_eigenvalue(i + 1);
  }
  const EigenResult r = eigen_symmetric(a, n, false);
  for (int i = 0; i < n; ++i) {
    CHECK(r.values[i] == doctest::Approx(isolated_eigenvalue(i + 1)).epsilon(1e-15));
  }
}

TEST_CASE("2x2 closed form") {
  const double av = 0.37, bv = 0.41, cv = -0.013;
  const std::vector<double> a{av, cv, cv, bv};
  const EigenResult r = eigen_symmetric(a, 2, true);
  const double mid = 0.5 * (av + bv);
  const double rad = std::sqrt(0.25 * (av - bv) * (av - bv) + cv * cv);
  CHECK(r.values[0] == doctest::Approx(mid - rad).epsilon(1e-14));
  CHECK(r.values[1] == doctest::Approx(mid + rad).epsilon(1e-14));
}

TEST_CASE("random 8x8 matches the characteristic-polynomial oracle") {
  for (unsigned seed : {12u, 77u, 2024u, 31415u}) {
    const int n = 8;
    const auto a = random_symmetric(n, seed);
    const auto oracle = oracles::char_poly_roots(a, n);
    REQUIRE(oracle.size() == 8);
    const EigenResult r = eigen_symmetric(a, n, false);
    for (int i = 0; i < n; ++i) {
      CHECK(r.values[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("trace preservation and Gershgorin containment on real blocks") {
  for (double zr : {0.05, 0.7, 12.0}) {
    const auto geom = SpherePlateGeometry::from_ratio(zr);
    for (int m : {0, 1, 5}) {
      const CouplingBlock block = build_block(m, 24, geom, -1.0);
      const int n = block.size();
      const EigenResult r = eigen_symmetric(block.entries, n, false);
      double sum = 0.0;
      for (double v : r.values) sum += v;
      CHECK(sum == doctest::Approx(trace(block.entries, n)).epsilon(1e-12));
      double lo = 1e300, hi = -1e300;
      for (int i = 0; i < n; ++i) {
        double radius = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j != i) radius += std::fabs(block.at(i, j));
        }
        lo = std::min(lo, block.at(i, i) - radius);
        hi = std::max(hi, block.at(i, i) + radius);
      }
      for (double v : r.values) {
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
      }
    }
  }
}

TEST_CASE("eigenpairs: residual and orthonormality") {
  const auto geom = SpherePlateGeometry::from_ratio(0.3);
  const CouplingBlock block = build_block(0, 20, geom, -1.0);
  const int n = block.size();
  const EigenResult r = eigen_symmetric(block.entries, n, true);
  double norm = 0.0;
  for (double v : block.entries) norm = std::max(norm, std::fabs(v));
  for (int nu = 0; nu < n; ++nu) {
    for (int i = 0; i < n; ++i) {
      double hv = 0.0;
      for (int j = 0; j < n; ++j) hv += block.at(i, j) * r.vector(j, nu);
      CHECK(std::fabs(hv - r.values[nu] * r.vector(i, nu)) <= 1e-10 * norm);
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += r.vector(i, a) * r.vector(i, b);
      CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("values ascending and deterministic") {
  const auto a = random_symmetric(40, 99u);
  const EigenResult r1 = eigen_symmetric(a, 40, false);
  const EigenResult r2 = eigen_symmetric(a, 40, false);
  for (int i = 0; i + 1 < 40; ++i) CHECK(r1.values[i] <= r1.values[i + 1]);
  for (int i = 0; i < 40; ++i) CHECK(r1.values[i] == r2.values[i]);  // bitwise
}

TEST_CASE("eigenvalue continuity under tiny geometry change") {
  const double zr = 0.4;
  const auto g1 = SpherePlateGeometry::from_ratio(zr);
  const auto g2 = SpherePlateGeometry::from_ratio(zr * (1.0 + 1e-6));
  const CouplingBlock b1 = build_block(0, 32, g1, -1.0);
  const CouplingBlock b2 = build_block(0, 32, g2, -1.0);
  const EigenResult r1 = eigen_symmetric(b1.entries, b1.size(), false);
  const EigenResult r2 = eigen_symmetric(b2.entries, b2.size(), false);
  for (int i = 0; i < b1.size(); ++i) {
    CHECK(std::fabs(r1.values[i] - r2.values[i]) <= 1e-4);
  }
}

TEST_CASE("workspace reuse gives identical results") {
  EigenWorkspace ws;
  const auto a = random_symmetric(16, 7u);
  const auto b = random_symmetric(16, 8u);
  (void)eigen_symmetric(b, 16, true, &ws);  // dirty the workspace
  const EigenResult with_ws = eigen_symmetric(a, 16, true, &ws);
  const EigenResult fresh = eigen_symmetric(a, 16, true);
  for (int i = 0; i < 16; ++i) CHECK(with_ws.values[i] == fresh.values[i]);
  for (std::size_t i = 0; i < fresh.vectors.size(); ++i) {
    CHECK(with_ws.vectors[i] == fresh.vectors[i]);
  }
}

TEST_CASE("bad input is rejected") {
  CHECK_THROWS_AS(eigen_symmetric(std::vector<double>{1.0, 2.0}, 2, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(eigen_symmetric(std::vector<double>{}, 0, false),
                  std::invalid_argument);
}
