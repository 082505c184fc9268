#include "vdws/physics.hpp"

#include <cmath>

namespace vdws {

double contrast_factor(const DielectricModel& substrate) {
  if (substrate.kind == DielectricModel::Kind::drude) {
    throw std::invalid_argument(
        "contrast_factor: frequency-dependent substrates are not supported");
  }
  if (substrate.is_perfect_conductor()) return -1.0;
  const double eps = substrate.eps_const;
  if (eps < 1.0) {
    throw std::invalid_argument("contrast_factor: substrate eps must be >= 1");
  }
  return (1.0 - eps) / (1.0 + eps);
}

std::complex<double> spectral_u(const DielectricModel& model, double omega_wp,
                                bool lossless) {
  if (model.kind != DielectricModel::Kind::drude) {
    throw std::invalid_argument("spectral_u: Drude sphere required");
  }
  const double w = omega_wp;
  if (lossless) return {w * w, 0.0};
  return std::complex<double>(w, 0.0) *
         std::complex<double>(w, model.inv_tau_wp);
}

double omega_of_eigenvalue(const DielectricModel& model, double n,
                           bool lossless) {
  if (n <= 0.0) {
    throw std::domain_error("omega_of_eigenvalue: mode collapse, n <= 0");
  }
  if (n >= 1.0) {
    throw std::domain_error("omega_of_eigenvalue: n outside (0, 1)");
  }
  if (lossless) return std::sqrt(n);
  const double g = model.inv_tau_wp;
  const double disc = n - 0.25 * g * g;
  if (disc <= 0.0) {
    throw std::domain_error("omega_of_eigenvalue: overdamped mode");
  }
  return std::sqrt(disc);
}

double sphere_polarizability(const DielectricModel& model, int l, double R_nm,
                             double omega_wp) {
  if (l < 1) throw std::invalid_argument("sphere_polarizability: l >= 1");
  if (R_nm <= 0.0) throw std::invalid_argument("sphere_polarizability: R > 0");
  double eps;
  if (model.kind == DielectricModel::Kind::drude) {
    // lossless Drude: eps = 1 - 1/w^2
    eps = 1.0 - 1.0 / (omega_wp * omega_wp);
  } else {
    eps = model.eps_const;
  }
  const double r2l1 = std::pow(R_nm, 2 * l + 1);
  if (std::isinf(eps)) {
    return static_cast<double>(l) / (l + 1.0) * r2l1;
  }
  const double denom = l * (eps + 1.0) + 1.0;
  if (denom == 0.0) {
    throw std::domain_error("sphere_polarizability: on-resonance pole");
  }
  return l * (eps - 1.0) / denom * r2l1;
}

double sphere_polarizability_spectral(int l, double R_nm, double u) {
  if (l < 1) throw std::invalid_argument("sphere_polarizability: l >= 1");
  if (R_nm <= 0.0) throw std::invalid_argument("sphere_polarizability: R > 0");
  const double n0 = isolated_eigenvalue(l);
  if (u == n0) {
    throw std::domain_error("sphere_polarizability: on-resonance pole u = n0");
  }
  return n0 * std::pow(R_nm, 2 * l + 1) / (n0 - u);
}

}  // namespace vdws
