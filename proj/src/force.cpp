#include "vdws/force.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vdws/kahan.hpp"

namespace vdws {

double force_hellmann_feynman(const SpherePlateGeometry& geom, double f_c,
                              int L) {
  if (L < 1) throw std::invalid_argument("force_hellmann_feynman: L >= 1");
  // per-block sums collected by index, folded in fixed order below
  std::vector<double> block_sums(L + 1, 0.0);
  bool collapsed = false;
#pragma omp parallel
  {
    EigenWorkspace ws;
#pragma omp for schedule(dynamic)
    for (int m = 0; m <= L; ++m) {
      const CouplingBlock block = build_block(m, L, geom, f_c);
      const std::vector<double> dh = block_z_derivative(block, geom);
      const EigenResult eig =
          eigen_symmetric(block.entries, block.size(), true, &ws);
      const int n = eig.n;
      const int degeneracy = m == 0 ? 1 : 2;
      double block_sum = 0.0;
      for (int nu = 0; nu < n; ++nu) {
        const double n_nu = eig.values[nu];
        if (n_nu <= 0.0) {
#pragma omp atomic write
          collapsed = true;
          break;
        }
        // quadratic form v^T dH/dz v
        double q = 0.0;
        for (int i = 0; i < n; ++i) {
          double row = 0.0;
          for (int j = 0; j < n; ++j) {
            row += dh[static_cast<std::size_t>(i) * n + j] * eig.vector(j, nu);
          }
          q += eig.vector(i, nu) * row;
        }
        block_sum += q / std::sqrt(n_nu);
      }
      block_sums[m] = degeneracy * block_sum;
    }
  }
  if (collapsed) {
    throw std::domain_error("force_hellmann_feynman: mode collapse");
  }
  KahanSum total;
  for (double s : block_sums) total += s;
  return -0.25 * total;
}

double force_finite_difference(const std::function<double(double)>& energy_of_z,
                               double z_nm, double h_rel) {
  if (z_nm <= 0.0) throw std::invalid_argument("force_finite_difference: z > 0");
  if (!(h_rel > 0.0 && h_rel <= 1e-2)) {
    throw std::invalid_argument("force_finite_difference: h_rel in (0, 1e-2]");
  }
  const double h = h_rel * z_nm;
  return -(energy_of_z(z_nm + h) - energy_of_z(z_nm - h)) / (2.0 * h);
}

std::vector<double> local_slope(std::span<const double> abscissa,
                                std::span<const double> energy) {
  const std::size_t n = abscissa.size();
  if (energy.size() != n) {
    throw std::invalid_argument("local_slope: size mismatch");
  }
  if (n < 3) throw std::invalid_argument("local_slope: need >= 3 samples");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> slope(n, nan);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (energy[i - 1] == 0.0 || energy[i] == 0.0 || energy[i + 1] == 0.0) {
      continue;  // undefined
    }
    slope[i] = (std::log(std::fabs(energy[i + 1])) -
                std::log(std::fabs(energy[i - 1]))) /
               (std::log(abscissa[i + 1]) - std::log(abscissa[i - 1]));
  }
  return slope;
}

}  // namespace vdws
