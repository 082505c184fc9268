#pragma once

#include <complex>
#include <limits>
#include <stdexcept>

namespace vdws {

/// hbar*c in eV*nm, used at output boundaries only.
inline constexpr double k_hbar_c_eV_nm = 197.327;

/// Depolarization eigenvalue of the isolated sphere, n0_l = l/(2l+1).
/// Strictly increasing in l, bounded by 1/2; n0_1 = 1/3.
inline double isolated_eigenvalue(int l) {
  return static_cast<double>(l) / (2.0 * l + 1.0);
}

/// Material response of sphere or substrate. Drude metal or a real,
/// frequency-independent dielectric constant (+inf = perfect conductor).
/// Immutable after construction; all queries are pure.
struct DielectricModel {
  enum class Kind { drude, constant };

  Kind kind = Kind::constant;
  double omega_p_eV = 0.0;  // plasma energy, Drude only
  double inv_tau_wp = 0.0;  // (tau*omega_p)^-1, Drude only
  double eps_const = 1.0;   // constant only; may be +inf

  static DielectricModel drude(double omega_p_eV, double inv_tau_wp = 0.0) {
    if (omega_p_eV <= 0.0) throw std::invalid_argument("omega_p must be > 0");
    if (inv_tau_wp < 0.0) throw std::invalid_argument("inv_tau_wp must be >= 0");
    return {Kind::drude, omega_p_eV, inv_tau_wp, 1.0};
  }
  static DielectricModel constant(double eps) {
    return {Kind::constant, 0.0, 0.0, eps};
  }
  static DielectricModel perfect_conductor() {
    return constant(std::numeric_limits<double>::infinity());
  }

  bool is_perfect_conductor() const {
    return kind == Kind::constant && std::isinf(eps_const);
  }
};

/// Substrate contrast factor f_c = (1 - eps)/(1 + eps), in [-1, 0] for
/// eps in [1, inf]; -1 for a perfect conductor. Drude substrates are
/// rejected (frequency-dependent contrast is out of scope).
double contrast_factor(const DielectricModel& substrate);

/// Spectral variable u(omega) = [1 - eps_sph(omega)]^-1 of a Drude sphere,
/// evaluated at omega given in units of omega_p. Equals w*(w + i*inv_tau_wp)
/// with w = omega/omega_p; imaginary part dropped in lossless mode.
std::complex<double> spectral_u(const DielectricModel& model, double omega_wp,
                                bool lossless);

/// Inverse map of spectral_u: mode frequency (units of omega_p) for a
/// depolarization eigenvalue n in (0, 1). Lossless -> sqrt(n); damped ->
/// real part of the underdamped quadratic root, sqrt(n - inv_tau_wp^2/4).
/// Throws on n <= 0 (mode collapse) and on overdamped modes.
double omega_of_eigenvalue(const DielectricModel& model, double n,
                           bool lossless);

/// Multipolar polarizability alpha_l of a homogeneous sphere from the
/// dielectric function: alpha_l = l(eps-1)/(l(eps+1)+1) * R^(2l+1).
double sphere_polarizability(const DielectricModel& model, int l, double R_nm,
                             double omega_wp);

/// Same polarizability in spectral form, alpha_l = n0_l R^(2l+1)/(n0_l - u).
/// Throws when u sits on the pole u = n0_l.
double sphere_polarizability_spectral(int l, double R_nm, double u);

}  // namespace vdws
