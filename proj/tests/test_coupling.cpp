#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "vdws/coupling.hpp"
#include "vdws/physics.hpp"

using namespace vdws;

TEST_CASE("dipole entries reproduce image-dipole electrostatics") {
  // perpendicular (m=0) to parallel (m=1) magnitude ratio is exactly 2:1
  const double x = 0.2;
  const double fc = -0.7;
  const double perp = coupling_coefficient(1, 1, 0, x, fc);
  const double par = coupling_coefficient(1, 1, 1, x, fc);
  CHECK(perp == doctest::Approx(2.0 / 3.0 * fc * x * x * x).epsilon(1e-15));
  CHECK(par == doctest::Approx(1.0 / 3.0 * fc * x * x * x).epsilon(1e-15));
  CHECK(perp / par == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("projection oracle confirms the closed form") {
  const double x = 0.21;
  const double fc = -0.8;
  for (int m = -4; m <= 4; ++m) {
    const int lmin = std::max(1, std::abs(m));
    for (int l = lmin; l <= 6; ++l) {
      for (int lp = lmin; lp <= 6; ++lp) {
        const double closed = coupling_coefficient(l, lp, m, x, fc);
        const double projected = oracles::coupling_by_projection(l, lp, m, x, fc);
        CHECK(closed == doctest::Approx(projected).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("attraction sign: f_c < 0 lowers the lowest m=0 mode") {
  const auto geom = SpherePlateGeometry::from_ratio(0.5);
  const CouplingBlock block = build_block(0, 4, geom, -1.0);
  // diagonal of the dipole entry sits below n0_1
  CHECK(block.at(0, 0) < isolated_eigenvalue(1));
}

TEST_CASE("geometry ratio") {
  const SpherePlateGeometry geom(50.0, 25.0);
  CHECK(geom.d_nm() == 150.0);
  CHECK(geom.x() == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(geom.z_over_R() == 0.5);
  CHECK_THROWS_AS(SpherePlateGeometry(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpherePlateGeometry(1.0, -1.0), std::invalid_argument);
  for (double zr : {1e-6, 0.01, 1.0, 1e6}) {
    const double x = SpherePlateGeometry::from_ratio(zr).x();
    CHECK(x > 0.0);
    CHECK(x < 0.5);
  }
}

TEST_CASE("block construction") {
  const auto geom = SpherePlateGeometry::from_ratio(1.0);  // x = 0.25
  SUBCASE("hand-evaluated single entry at m=0, L=1, f_c=-1") {
    const CouplingBlock b = build_block(0, 1, geom, -1.0);
    REQUIRE(b.size() == 1);
    CHECK(b.at(0, 0) ==
          doctest::Approx(1.0 / 3.0 - 2.0 / 3.0 * 0.015625).epsilon(1e-15));
  }
  SUBCASE("smallest block at m = L") {
    const CouplingBlock b = build_block(3, 3, geom, -0.5);
    REQUIRE(b.size() == 1);
    CHECK(b.at(0, 0) == doctest::Approx(isolated_eigenvalue(3) +
                                        coupling_coefficient(3, 3, 3, 0.25, -0.5))
                            .epsilon(1e-15));
  }
  SUBCASE("x -> 0 gives the isolated diagonal") {
    const auto far = SpherePlateGeometry::from_ratio(1e12);
    const CouplingBlock b = build_block(0, 6, far, -1.0);
    for (int i = 0; i < b.size(); ++i) {
      CHECK(b.at(i, i) == doctest::Approx(isolated_eigenvalue(i + 1)).epsilon(1e-14));
      for (int j = i + 1; j < b.size(); ++j) {
        CHECK(std::fabs(b.at(i, j)) < 1e-30);
      }
    }
  }
  SUBCASE("exact symmetry by construction") {
    const CouplingBlock b = build_block(2, 24, SpherePlateGeometry::from_ratio(0.05), -0.9);
    for (int i = 0; i < b.size(); ++i) {
      for (int j = 0; j < b.size(); ++j) {
        CHECK(b.at(i, j) == b.at(j, i));  // bitwise
      }
    }
  }
  SUBCASE("+m and -m coefficients are identical") {
    for (int m = 1; m <= 3; ++m) {
      for (int l = m; l <= 5; ++l) {
        for (int lp = m; lp <= 5; ++lp) {
          CHECK(coupling_coefficient(l, lp, m, 0.3, -1.0) ==
                coupling_coefficient(l, lp, -m, 0.3, -1.0));
        }
      }
    }
  }
}

TEST_CASE("coupling scales exactly as x^(l+l'+1)") {
  const double fc = -1.0;
  for (int l = 1; l <= 7; ++l) {
    for (int lp = 1; lp <= 7; ++lp) {
      const double c1 = coupling_coefficient(l, lp, 0, 0.2, fc);
      const double c2 = coupling_coefficient(l, lp, 0, 0.4, fc);
      CHECK(c2 / c1 ==
            doctest::Approx(std::pow(2.0, l + lp + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("same-order entries decay like (4x^2)^l for x < 1/2") {
  for (double x : {0.2, 0.35, 0.49}) {
    double prev = std::fabs(coupling_coefficient(1, 1, 0, x, -1.0));
    for (int l = 2; l <= 40; ++l) {
      const double cur = std::fabs(coupling_coefficient(l, l, 0, x, -1.0));
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("large orders stay finite in log space") {
  // (l+l')! alone would overflow far below this
  const double c = coupling_coefficient(400, 400, 0, 0.49, -1.0);
  CHECK(std::isfinite(c));
  CHECK(c != 0.0);
  // deep underflow flushes to zero
  CHECK(coupling_coefficient(400, 400, 0, 1e-3, -1.0) == 0.0);
}

TEST_CASE("z-derivative") {
  const auto geom = SpherePlateGeometry::from_ratio(0.8, 10.0);
  SUBCASE("closed-form dipole entry") {
    const CouplingBlock b = build_block(0, 1, geom, -1.0);
    const auto d = block_z_derivative(b, geom);
    const double x = geom.x();
    CHECK(d[0] == doctest::Approx(2.0 * x * x * x / (geom.z_nm + geom.R_nm))
                      .epsilon(1e-14));
  }
  SUBCASE("x -> 0 derivative is negligible") {
    const auto far = SpherePlateGeometry::from_ratio(1e13, 10.0);
    const CouplingBlock b = build_block(0, 3, far, -1.0);
    for (double v : block_z_derivative(b, far)) CHECK(std::fabs(v) < 1e-50);
  }
  SUBCASE("finite-difference oracle") {
    for (int m : {0, 1, 2}) {
      const CouplingBlock b = build_block(m, 8, geom, -0.6);
      const auto d = block_z_derivative(b, geom);
      const double h = 1e-6 * geom.z_nm;
      const CouplingBlock bp =
          build_block(m, 8, SpherePlateGeometry(geom.R_nm, geom.z_nm + h), -0.6);
      const CouplingBlock bm =
          build_block(m, 8, SpherePlateGeometry(geom.R_nm, geom.z_nm - h), -0.6);
      for (int i = 0; i < b.size(); ++i) {
        for (int j = 0; j < b.size(); ++j) {
          const double fd = (bp.at(i, j) - bm.at(i, j)) / (2.0 * h);
          const double an = d[static_cast<std::size_t>(i) * b.size() + j];
          if (fd == 0.0 && an == 0.0) continue;
          CHECK(an == doctest::Approx(fd).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("debug dump is 17-significant-digit row-major text") {
  const CouplingBlock b = build_block(0, 2, SpherePlateGeometry::from_ratio(1.0), -1.0);
  std::ostringstream os;
  dump_block(b, os);
  std::istringstream in(os.str());
  double v;
  int count = 0;
  while (in >> v) {
    ++count;
  }
  CHECK(count == 4);
  // first value round-trips exactly
  std::istringstream first(os.str());
  first >> v;
  CHECK(v == b.at(0, 0));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(coupling_coefficient(0, 1, 0, 0.2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(coupling_coefficient(1, 1, 2, 0.2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(coupling_coefficient(1, 1, 0, 0.6, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_block(3, 2, SpherePlateGeometry::from_ratio(1.0), -1.0),
                  std::invalid_argument);
}
