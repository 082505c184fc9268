#include "vdws/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vdws {

namespace {

constexpr int k_max_ql_sweeps = 50;

double hypot2(double a, double b) { return std::hypot(a, b); }

// Householder reduction to tridiagonal form. With accumulate=true the
// working matrix a is overwritten by the orthogonal transform Q; otherwise
// only d (diagonal) and e (subdiagonal, e[0] unused) are produced.
void householder_tridiag(std::vector<double>& a, int n, std::vector<double>& d,
                         std::vector<double>& e, bool accumulate) {
  auto A = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };

  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0;
    double scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          if (accumulate) A(j, i) = A(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (int k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = A(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) {
            A(j, k) -= f * e[k] + g * A(i, k);
          }
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }

  if (accumulate) d[0] = 0.0;
  e[0] = 0.0;

  for (int i = 0; i < n; ++i) {
    if (accumulate) {
      const int l = i - 1;
      if (d[i] != 0.0) {
        for (int j = 0; j <= l; ++j) {
          double g = 0.0;
          for (int k = 0; k <= l; ++k) g += A(i, k) * A(k, j);
          for (int k = 0; k <= l; ++k) A(k, j) -= g * A(k, i);
        }
      }
      d[i] = A(i, i);
      A(i, i) = 1.0;
      for (int j = 0; j <= l; ++j) A(j, i) = A(i, j) = 0.0;
    } else {
      d[i] = A(i, i);
    }
  }
}

// Implicit-shift QL on a tridiagonal matrix. When z is non-null the
// rotations are accumulated into it (z must hold the Householder Q on
// entry); otherwise only eigenvalues are produced.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, int n,
                       std::vector<double>* z) {
  auto Z = [&](int i, int j) -> double& {
    return (*z)[static_cast<std::size_t>(i) * n + j];
  };

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) {
          break;
        }
      }
      if (m != l) {
        if (iter++ == k_max_ql_sweeps) {
          throw std::runtime_error("eigen_symmetric: QL failed to converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            for (int k = 0; k < n; ++k) {
              f = Z(k, i + 1);
              Z(k, i + 1) = s * Z(k, i) + c * f;
              Z(k, i) = c * Z(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

EigenResult eigen_symmetric(std::span<const double> matrix, int n,
                            bool want_vectors, EigenWorkspace* workspace) {
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("eigen_symmetric: bad dimensions");
  }
  EigenWorkspace local;
  EigenWorkspace& ws = workspace != nullptr ? *workspace : local;
  ws.a.assign(matrix.begin(), matrix.end());
  ws.d.assign(n, 0.0);
  ws.e.assign(n, 0.0);

  EigenResult result;
  result.n = n;
  result.has_vectors = want_vectors;

  if (n == 1) {
    result.values = {matrix[0]};
    if (want_vectors) result.vectors = {1.0};
    return result;
  }

  householder_tridiag(ws.a, n, ws.d, ws.e, want_vectors);
  ql_implicit_shift(ws.d, ws.e, n, want_vectors ? &ws.a : nullptr);

  // stable ascending sort; permute vector columns alongside
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return ws.d[i] < ws.d[j]; });
  result.values.resize(n);
  for (int i = 0; i < n; ++i) result.values[i] = ws.d[order[i]];
  if (want_vectors) {
    result.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int row = 0; row < n; ++row) {
      for (int col = 0; col < n; ++col) {
        result.vectors[static_cast<std::size_t>(row) * n + col] =
            ws.a[static_cast<std::size_t>(row) * n + order[col]];
      }
    }
  }
  return result;
}

}  // namespace vdws
