#include "vdws/baselines.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vdws/physics.hpp"

namespace vdws {

namespace {

using std::numbers::pi;

// Gauss-Legendre nodes/weights on (-1, 1) by Newton iteration, cached per
// order. The integrands below are smooth after substitution, so a fixed
// high order reaches machine precision without adaptive subdivision.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int order = 200) {
  const GaussRule& rule = gauss_rule(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace

double casimir_plate_energy(double z_nm) {
  if (z_nm <= 0.0) throw std::invalid_argument("casimir_plate_energy: z > 0");
  return -(pi * pi * k_hbar_c_eV_nm / 720.0) / (z_nm * z_nm * z_nm);
}

double pt_force_two_spheres(double z_nm, double R1_nm, double R2_nm,
                            const std::function<double(double)>& plate_energy) {
  if (R1_nm <= 0.0 || R2_nm <= 0.0) {
    throw std::invalid_argument("pt_force_two_spheres: radii > 0");
  }
  const double reduced = R1_nm * R2_nm / (R1_nm + R2_nm);
  return 2.0 * pi * reduced * plate_energy(z_nm);
}

double pt_force_sphere_plate(double z_nm, double R_nm,
                             const std::function<double(double)>& plate_energy) {
  if (R_nm <= 0.0) throw std::invalid_argument("pt_force_sphere_plate: R > 0");
  return 2.0 * pi * R_nm * plate_energy(z_nm);
}

double pt_force_perfect_conductor(double z_nm, double R_nm) {
  return -(pi * pi * pi * k_hbar_c_eV_nm / 360.0) * R_nm /
         (z_nm * z_nm * z_nm);
}

double roughness_multiplier(double z_nm, double A_r_nm) {
  if (z_nm <= 0.0) throw std::invalid_argument("roughness_multiplier: z > 0");
  if (A_r_nm < 0.0) throw std::invalid_argument("roughness_multiplier: A_r >= 0");
  const double r2 = (A_r_nm / z_nm) * (A_r_nm / z_nm);
  return 1.0 + 6.0 * r2 + 15.0 * r2 * r2;
}

double plate_plate_nonretarded_energy_plasmon(double z_nm, double omega_p_eV) {
  if (z_nm <= 0.0) throw std::invalid_argument("plate_plate energy: z > 0");
  // E/A = (hbar omega_p / (4 pi z^2)) * int_0^inf t [w+(t) + w-(t) - sqrt(2)] dt
  // with w+-(t) = sqrt((1 +- e^-t)/2); the t^-2 scaling is exact. The
  // substitution t = q^2 removes the sqrt(t) cusp of w-(t) at the origin.
  const auto integrand = [](double q) {
    const double t = q * q;
    const double a = std::exp(-t);
    return 2.0 * q * t *
           (std::sqrt(0.5 * (1.0 + a)) + std::sqrt(0.5 * (1.0 - a)) -
            std::sqrt(2.0));
  };
  const double c = integrate(integrand, 0.0, std::sqrt(80.0));
  return omega_p_eV * c / (4.0 * pi * z_nm * z_nm);
}

double plate_plate_nonretarded_energy_lifshitz(double z_nm, double omega_p_eV) {
  if (z_nm <= 0.0) throw std::invalid_argument("plate_plate energy: z > 0");
  // E/A = (hbar omega_p / (16 pi^2 z^2)) *
  //       int_0^inf dv int_0^inf ds s ln(1 - r(v)^2 e^-s),
  // r(v) = 1/(1 + 2 v^2) the Drude half-space reflection at xi = v omega_p.
  const auto inner = [](double r2) {
    return integrate(
        [r2](double s) {
          const double a = r2 * std::exp(-s);
          return a > 0.0 ? s * std::log1p(-a) : 0.0;
        },
        0.0, 80.0, 320);
  };
  // map v = w/(1-w) onto (0,1)
  const auto outer = [&inner](double w) {
    const double v = w / (1.0 - w);
    const double r = 1.0 / (1.0 + 2.0 * v * v);
    const double jac = 1.0 / ((1.0 - w) * (1.0 - w));
    return inner(r * r) * jac;
  };
  const double c = integrate(outer, 0.0, 1.0);
  return omega_p_eV * c / (16.0 * pi * pi * z_nm * z_nm);
}

PowerLawReference::PowerLawReference(double exponent, double anchor_t,
                                     double anchor_value)
    : exponent_(exponent),
      coefficient_(anchor_value / std::pow(anchor_t, exponent)) {
  if (anchor_value == 0.0) {
    throw std::invalid_argument("PowerLawReference: anchor must be nonzero");
  }
}

double PowerLawReference::operator()(double t) const {
  return coefficient_ * std::pow(t, exponent_);
}

}  // namespace vdws
