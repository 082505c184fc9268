#include "vdws/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "vdws/kahan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vdws {

std::size_t ModeSpectrum::mode_count() const {
  std::size_t count = 0;
  for (const auto& b : blocks) count += b.degeneracy * b.eigenvalues.size();
  return count;
}

namespace {

BlockSpectrum solve_one_block(int m, int L, const SpherePlateGeometry& geom,
                              double f_c, EigenWorkspace& ws) {
  const CouplingBlock block = build_block(m, L, geom, f_c);
  const EigenResult eig =
      eigen_symmetric(block.entries, block.size(), false, &ws);
  BlockSpectrum bs;
  bs.m = m;
  bs.l_min = block.l_min;
  bs.degeneracy = m == 0 ? 1 : 2;
  bs.eigenvalues = eig.values;
  return bs;
}

void finalize(ModeSpectrum& spec) {
  for (const auto& b : spec.blocks) {
    for (double n : b.eigenvalues) {
      if (!(n > 0.0 && n < 1.0)) {
        spec.valid = false;
        return;
      }
    }
  }
}

}  // namespace

ModeSpectrum solve_spectrum_serial(const SpherePlateGeometry& geom, double f_c,
                                   int L) {
  if (L < 1) throw std::invalid_argument("solve_spectrum: L >= 1");
  ModeSpectrum spec;
  spec.z_over_R = geom.z_over_R();
  spec.x = geom.x();
  spec.f_c = f_c;
  spec.L = L;
  spec.blocks.resize(L + 1);
  EigenWorkspace ws;
  for (int m = 0; m <= L; ++m) {
    spec.blocks[m] = solve_one_block(m, L, geom, f_c, ws);
  }
  finalize(spec);
  return spec;
}

ModeSpectrum solve_spectrum(const SpherePlateGeometry& geom, double f_c,
                            int L) {
  if (L < 1) throw std::invalid_argument("solve_spectrum: L >= 1");
  ModeSpectrum spec;
  spec.z_over_R = geom.z_over_R();
  spec.x = geom.x();
  spec.f_c = f_c;
  spec.L = L;
  spec.blocks.resize(L + 1);
  // indexed collection keeps output independent of scheduling
#pragma omp parallel
  {
    EigenWorkspace ws;
#pragma omp for schedule(dynamic)
    for (int m = 0; m <= L; ++m) {
      spec.blocks[m] = solve_one_block(m, L, geom, f_c, ws);
    }
  }
  finalize(spec);
  return spec;
}

double interaction_energy(const ModeSpectrum& spec) {
  KahanSum sum;
  for (const auto& b : spec.blocks) {
    KahanSum block_sum;
    for (std::size_t i = 0; i < b.eigenvalues.size(); ++i) {
      const double n = b.eigenvalues[i];
      const double n0 = isolated_eigenvalue(b.l_min + static_cast<int>(i));
      // cancellation-safe form of sqrt(n) - sqrt(n0)
      block_sum += (n - n0) / (std::sqrt(n) + std::sqrt(n0));
    }
    sum += b.degeneracy * static_cast<double>(block_sum);
  }
  return 0.5 * sum;
}

double interaction_energy_damped(const ModeSpectrum& spec, double inv_tau_wp) {
  const double q = 0.25 * inv_tau_wp * inv_tau_wp;
  KahanSum sum;
  for (const auto& b : spec.blocks) {
    KahanSum block_sum;
    for (std::size_t i = 0; i < b.eigenvalues.size(); ++i) {
      const double n = b.eigenvalues[i];
      const double n0 = isolated_eigenvalue(b.l_min + static_cast<int>(i));
      if (n <= q || n0 <= q) {
        throw std::domain_error("interaction_energy_damped: overdamped mode");
      }
      block_sum += (n - n0) / (std::sqrt(n - q) + std::sqrt(n0 - q));
    }
    sum += b.degeneracy * static_cast<double>(block_sum);
  }
  return 0.5 * sum;
}

std::vector<double> greens_response(const EigenResult& eigen, double u,
                                    std::span<const double> drive) {
  const int n = eigen.n;
  if (!eigen.has_vectors) {
    throw std::invalid_argument("greens_response: eigenvectors required");
  }
  if (drive.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("greens_response: drive size mismatch");
  }
  for (double nv : eigen.values) {
    if (std::fabs(u - nv) < 1e-9) {
      throw std::domain_error("greens_response: u within 1e-9 of a pole");
    }
  }
  std::vector<double> x(n, 0.0);
  for (int nu = 0; nu < n; ++nu) {
    double proj = 0.0;
    for (int row = 0; row < n; ++row) proj += eigen.vector(row, nu) * drive[row];
    const double weight = -proj / (u - eigen.values[nu]);
    for (int row = 0; row < n; ++row) x[row] += weight * eigen.vector(row, nu);
  }
  return x;
}

ConvergeResult converge_L(const SpherePlateGeometry& geom, double f_c,
                          double rel_tol, int L_start, int L_step, int L_cap) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("converge_L: rel_tol > 0");
  if (L_start < 1 || L_step < 1 || L_cap < L_start) {
    throw std::invalid_argument("converge_L: bad L schedule");
  }
  ConvergeResult result;
  result.spectrum = solve_spectrum(geom, f_c, L_start);
  result.L_used = L_start;
  result.energy = interaction_energy(result.spectrum);
  if (std::isinf(rel_tol)) {
    result.converged = true;
    return result;
  }
  int step = L_step;
  while (result.L_used < L_cap) {
    const int L_next = std::min(result.L_used + step, L_cap);
    ModeSpectrum next = solve_spectrum(geom, f_c, L_next);
    const double e_next = interaction_energy(next);
    const double delta = std::fabs(e_next - result.energy);
    result.spectrum = std::move(next);
    result.L_used = L_next;
    result.last_delta = e_next != 0.0 ? delta / std::fabs(e_next) : delta;
    result.energy = e_next;
    if (delta <= rel_tol * std::fabs(e_next)) {
      result.converged = true;
      return result;
    }
    step *= 2;  // geometric schedule amortizes eigensolves
  }
  result.converged = false;
  return result;
}

}  // namespace vdws
