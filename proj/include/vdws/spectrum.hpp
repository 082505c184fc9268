#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vdws/coupling.hpp"
#include "vdws/eigen.hpp"
#include "vdws/physics.hpp"

namespace vdws {

/// Eigenvalues of one m-block together with its degeneracy (1 for m = 0,
/// 2 for m >= 1 since +-m blocks are identical) and the unperturbed
/// reference values n0_l over the same l range.
struct BlockSpectrum {
  int m = 0;
  int l_min = 1;
  int degeneracy = 1;
  std::vector<double> eigenvalues;  // ascending
};

/// Full mode set of a geometry at truncation L: blocks m = 0..L.
/// valid is false when any eigenvalue leaves (0, 1).
struct ModeSpectrum {
  double z_over_R = 0.0;
  double x = 0.0;
  double f_c = 0.0;
  int L = 0;
  bool valid = true;
  std::vector<BlockSpectrum> blocks;

  /// L^2 + 2L counting degeneracy.
  std::size_t mode_count() const;
};

/// Build and diagonalize all m-blocks. The parallel variant distributes
/// blocks over OpenMP threads (one eigen workspace each) and collects
/// results by index, so output is identical to the serial reference.
ModeSpectrum solve_spectrum(const SpherePlateGeometry& geom, double f_c, int L);
ModeSpectrum solve_spectrum_serial(const SpherePlateGeometry& geom, double f_c,
                                   int L);

/// Zero-point interaction energy in units of hbar*omega_p:
///   (1/2) sum_blocks degeneracy * sum_l [sqrt(n_nu) - sqrt(n0_l)]
/// with ascending pairing inside each block. Per-mode differences are
/// evaluated as (n - n0)/(sqrt(n) + sqrt(n0)) and accumulated with
/// compensated summation. The z->infinity reference is analytic.
double interaction_energy(const ModeSpectrum& spec);

/// Damped variant for sensitivity reporting: mode frequencies are the
/// real parts of the underdamped roots, sqrt(n - g^2/4) with
/// g = (tau*omega_p)^-1. Overdamped modes throw.
double interaction_energy_damped(const ModeSpectrum& spec, double inv_tau_wp);

/// Spectral solution of the scaled linear system at spectral value u:
///   x = -sum_nu v_nu (v_nu^T b)/(u - n_nu).
/// Throws when u is within 1e-9 of any eigenvalue.
std::vector<double> greens_response(const EigenResult& eigen, double u,
                                    std::span<const double> drive);

/// Adaptive truncation: evaluates E at L, L+step, 2*step doubling, until
/// |E(next) - E(prev)| <= rel_tol*|E(next)| or the cap is hit.
struct ConvergeResult {
  ModeSpectrum spectrum;  // at L_used
  int L_used = 0;
  bool converged = false;
  double last_delta = 0.0;  // |E(next) - E(prev)| / |E(next)|
  double energy = 0.0;      // hbar*omega_p units, at L_used
};

ConvergeResult converge_L(const SpherePlateGeometry& geom, double f_c,
                          double rel_tol, int L_start = 8, int L_step = 8,
                          int L_cap = 1024);

}  // namespace vdws
