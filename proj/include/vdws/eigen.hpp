#pragma once

#include <span>
#include <vector>

namespace vdws {

/// Eigendecomposition of a real symmetric matrix. values are ascending;
/// vectors (when requested) is the column-orthonormal matrix with column
/// nu the eigenvector of values[nu], stored row-major.
struct EigenResult {
  int n = 0;
  bool has_vectors = false;
  std::vector<double> values;
  std::vector<double> vectors;  // row-major n*n, column nu <-> values[nu]

  double vector(int row, int nu) const {
    return vectors[static_cast<std::size_t>(row) * n + nu];
  }
};

/// Scratch buffers reused across solves to keep the sweep hot loop
/// allocation-free. One workspace per worker thread.
struct EigenWorkspace {
  std::vector<double> a;  // tridiagonalization working copy / transform
  std::vector<double> d;  // diagonal
  std::vector<double> e;  // off-diagonal
};

/// All eigenvalues (and optionally orthonormal eigenvectors) of a dense
/// symmetric matrix, via Householder tridiagonalization followed by
/// implicit-shift QL. The eigenvalues-only path skips transform
/// accumulation. Deterministic for identical input. Throws after 50
/// QL sweeps without convergence on any eigenvalue.
EigenResult eigen_symmetric(std::span<const double> matrix, int n,
                            bool want_vectors,
                            EigenWorkspace* workspace = nullptr);

}  // namespace vdws
