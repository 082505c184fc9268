#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vdws/coupling.hpp"
#include "vdws/spectrum.hpp"

namespace vdws {

/// Force from the mode sum without finite differencing:
///   F = -(1/4) sum degeneracy * n_nu^{-1/2} (v_nu^T dH/dz v_nu)
/// in hbar*omega_p per nm. Solves every block with eigenvectors at the
/// given truncation.
double force_hellmann_feynman(const SpherePlateGeometry& geom, double f_c,
                              int L);

/// Central difference -[E(z+h) - E(z-h)]/(2h) with h = h_rel*z. The
/// caller's energy function must hold the truncation fixed across the
/// two evaluations.
double force_finite_difference(const std::function<double(double)>& energy_of_z,
                               double z_nm, double h_rel = 1e-4);

/// Centered log-log slope d ln|E| / d ln(abscissa) per interior sample;
/// endpoints and zero-energy samples are NaN.
std::vector<double> local_slope(std::span<const double> abscissa,
                                std::span<const double> energy);

}  // namespace vdws
