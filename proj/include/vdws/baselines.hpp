#pragma once

#include <functional>

namespace vdws {

/// Ideal-conductor Casimir energy per unit area between parallel plates,
/// -(pi^2 hbar c / 720) / z^3, in eV/nm^2 for z in nm.
double casimir_plate_energy(double z_nm);

/// Proximity-Theorem force between two spheres from a pluggable
/// plate-plate energy per area: F = 2 pi (R1 R2/(R1+R2)) V(z), in the
/// units of V times nm.
double pt_force_two_spheres(double z_nm, double R1_nm, double R2_nm,
                            const std::function<double(double)>& plate_energy);

/// Sphere-plate limit R2 -> infinity: F = 2 pi R V(z).
double pt_force_sphere_plate(double z_nm, double R_nm,
                             const std::function<double(double)>& plate_energy);

/// Perfect-conductor sphere-plate PT force, -pi^3 hbar c R/(360 z^3),
/// in eV/nm.
double pt_force_perfect_conductor(double z_nm, double R_nm);

/// Truncated roughness series 1 + 6(A_r/z)^2 + 15(A_r/z)^4, >= 1.
double roughness_multiplier(double z_nm, double A_r_nm);

/// Non-retarded plate-plate energy per area for two identical Drude
/// half-spaces, in eV/nm^2 for omega_p given in eV. Two independent
/// routes that must agree:
///  - plasmon: zero-point sum of the coupled surface-plasmon branches
///    omega_pm(k) = omega_p sqrt((1 +- e^{-kz})/2) over the 2-D k plane;
///  - lifshitz: imaginary-frequency double quadrature of the reflection
///    form ln(1 - r^2 e^{-2kz}).
/// Both scale exactly as z^-2.
double plate_plate_nonretarded_energy_plasmon(double z_nm, double omega_p_eV);
double plate_plate_nonretarded_energy_lifshitz(double z_nm, double omega_p_eV);

/// Power-law curve c * t^exponent anchored so it passes through
/// (anchor_t, anchor_value) exactly.
class PowerLawReference {
 public:
  PowerLawReference(double exponent, double anchor_t, double anchor_value);
  double operator()(double t) const;

 private:
  double exponent_;
  double coefficient_;
};

}  // namespace vdws
