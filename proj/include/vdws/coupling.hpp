#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace vdws {

/// Sphere of radius R at minimum gap z above a flat substrate. The image
/// multipole sits at d = 2(z+R) below the sphere center; x = R/d is the
/// dimensionless expansion ratio, always in (0, 1/2).
struct SpherePlateGeometry {
  double R_nm = 0.0;
  double z_nm = 0.0;

  SpherePlateGeometry(double R, double z) : R_nm(R), z_nm(z) {
    if (R <= 0.0 || z <= 0.0) {
      throw std::invalid_argument("SpherePlateGeometry: R > 0 and z > 0");
    }
  }
  static SpherePlateGeometry from_ratio(double z_over_R, double R_nm = 1.0) {
    return {R_nm, z_over_R * R_nm};
  }

  double d_nm() const { return 2.0 * (z_nm + R_nm); }
  double x() const { return R_nm / d_nm(); }
  double z_over_R() const { return z_nm / R_nm; }
};

/// ln(n!) from a process-wide precomputed table (built once, read-only).
/// Valid for 0 <= n < log_factorial_capacity().
double log_factorial(int n);
int log_factorial_capacity();

/// Single entry of the m-block coupling part:
///   f_c (-1)^(l+l') sqrt(ll'/((2l+1)(2l'+1)))
///     * (l+l')!/sqrt((l+m)!(l-m)!(l'+m)!(l'-m)!) * x^(l+l'+1)
/// evaluated in log space; entries below 1e-300 flush to zero.
/// Symmetric under l <-> l', even in m.
double coupling_coefficient(int l, int lp, int m, double x, double f_c);

/// One m-conserving block of the dimensionless coupling matrix: indices
/// l, l' run over [max(1,m), L]; diagonal carries the isolated-sphere
/// eigenvalue n0_l plus the self-coupling term.
struct CouplingBlock {
  int m = 0;
  int l_min = 1;
  int L = 0;
  double f_c = 0.0;
  double x = 0.0;
  std::vector<double> entries;  // row-major, size n*n

  int size() const { return L - l_min + 1; }
  double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * size() + j]; }
};

CouplingBlock build_block(int m, int L, const SpherePlateGeometry& geom,
                          double f_c);

/// Analytic z-derivative of a block: each coupling entry picks up the
/// factor -(l+l'+1)/(z+R); the diagonal n0_l contributes nothing.
std::vector<double> block_z_derivative(const CouplingBlock& block,
                                       const SpherePlateGeometry& geom);

/// Plain-text row-major dump, scientific notation, 17 significant digits.
void dump_block(const CouplingBlock& block, std::ostream& os);

}  // namespace vdws
