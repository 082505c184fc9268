#include "vdws/coupling.hpp"

#include "vdws/physics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace vdws {

namespace {

constexpr int k_log_factorial_size = 8192;  // supports l + l' up to 8191

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(k_log_factorial_size);
    t[0] = 0.0;
    for (int n = 1; n < k_log_factorial_size; ++n) {
      t[n] = t[n - 1] + std::log(static_cast<double>(n));
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) { return log_factorial_table()[n]; }
int log_factorial_capacity() { return k_log_factorial_size; }

double coupling_coefficient(int l, int lp, int m, double x, double f_c) {
  const int am = m < 0 ? -m : m;
  if (l < 1 || lp < 1 || l < am || lp < am) {
    throw std::invalid_argument("coupling_coefficient: need l, l' >= max(1,|m|)");
  }
  if (!(x > 0.0 && x < 0.5)) {
    throw std::invalid_argument("coupling_coefficient: x must lie in (0, 1/2)");
  }
  if (l + lp >= log_factorial_capacity()) {
    throw std::invalid_argument("coupling_coefficient: order exceeds table");
  }
  if (f_c == 0.0) return 0.0;
  const auto& lf = log_factorial_table();
  const double log_comb =
      lf[l + lp] -
      0.5 * (lf[l + am] + lf[l - am] + lf[lp + am] + lf[lp - am]);
  const double log_mag =
      0.5 * std::log(static_cast<double>(l) * lp /
                     ((2.0 * l + 1.0) * (2.0 * lp + 1.0))) +
      log_comb + (l + lp + 1) * std::log(x);
  double mag = std::exp(log_mag);
  if (mag < 1e-300) mag = 0.0;  // denormal guard
  const double parity = ((l + lp) % 2 == 0) ? 1.0 : -1.0;
  return f_c * parity * mag;
}

CouplingBlock build_block(int m, int L, const SpherePlateGeometry& geom,
                          double f_c) {
  if (m < 0 || m > L || L < 1) {
    throw std::invalid_argument("build_block: need 0 <= m <= L, L >= 1");
  }
  CouplingBlock block;
  block.m = m;
  block.l_min = m > 1 ? m : 1;
  block.L = L;
  block.f_c = f_c;
  block.x = geom.x();
  const int n = block.size();
  block.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int l = block.l_min + i;
    for (int j = i; j < n; ++j) {
      const int lp = block.l_min + j;
      // one evaluation fills both triangles: symmetric by construction
      const double c = coupling_coefficient(l, lp, m, block.x, f_c);
      block.entries[static_cast<std::size_t>(i) * n + j] = c;
      block.entries[static_cast<std::size_t>(j) * n + i] = c;
    }
    block.entries[static_cast<std::size_t>(i) * n + i] +=
        isolated_eigenvalue(l);
  }
  return block;
}

std::vector<double> block_z_derivative(const CouplingBlock& block,
                                       const SpherePlateGeometry& geom) {
  const int n = block.size();
  std::vector<double> deriv(static_cast<std::size_t>(n) * n, 0.0);
  const double inv_zr = 1.0 / (geom.z_nm + geom.R_nm);
  for (int i = 0; i < n; ++i) {
    const int l = block.l_min + i;
    for (int j = i; j < n; ++j) {
      const int lp = block.l_min + j;
      double coupling = block.at(i, j);
      if (i == j) coupling -= isolated_eigenvalue(l);
      const double d = -(l + lp + 1) * inv_zr * coupling;
      deriv[static_cast<std::size_t>(i) * n + j] = d;
      deriv[static_cast<std::size_t>(j) * n + i] = d;
    }
  }
  return deriv;
}

void dump_block(const CouplingBlock& block, std::ostream& os) {
  const int n = block.size();
  char buf[32];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", block.at(i, j));
      os << buf << (j + 1 < n ? " " : "\n");
    }
  }
}

}  // namespace vdws
