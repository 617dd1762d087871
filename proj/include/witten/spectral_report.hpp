#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "witten/lanczos.hpp"
#include "witten/operators.hpp"

namespace witten {

enum class SpectralMode { dense_svd, iterative_deflated };

struct SpectralReport {
  Eigen::VectorXd singular_values;  // ascending; empty in iterative mode
  double gap = 0.0;                 // singular gap of the block operator
  double hamiltonian_gap = 0.0;     // eigen-gap of H = L^dagger L
  double poincare_constant = 0.0;   // 1 / hamiltonian_gap
  SpectralMode method = SpectralMode::dense_svd;
  bool converged = true;            // iterative mode only
  double residual = 0.0;            // iterative Ritz residual
  int applies = 0;
};

struct SpectralOptions {
  std::int64_t dense_guard = 4096;
  LanczosOptions lanczos;
  // Ritz values below max(kernel_floor_abs, kernel_floor_rel * alpha^2) are
  // treated as leakage of the deflated kernel and skipped.
  double kernel_floor_rel = 1e-12;
  double kernel_floor_abs = 1e-11;
};

// Dense mode: full SVD of the stacked operator, ascending singular values.
// Iterative mode: deflate the (known) Gibbs state out of H = L^dagger L and
// run the Lanczos solver on witten_apply; gap = sqrt(lambda_min(deflated)).
SpectralReport spectral_report(const BlockOperator& b, SpectralMode mode,
                               const std::optional<WaveState>& gibbs = {},
                               const SpectralOptions& opts = {});

// Same iterative machinery on an arbitrary Hermitian PSD operator (used for
// the direct-form Witten operators). Returns the smallest deflated
// eigenvalue above the kernel floor.
double deflated_smallest_eigenvalue(const HermitianApply& apply,
                                    std::int64_t n,
                                    const Eigen::VectorXcd& kernel_vector,
                                    double scale_bound,
                                    const SpectralOptions& opts = {},
                                    LanczosResult* details = nullptr);

// Dense route: materialize the operator column by column and return all
// eigenvalues (ascending).
Eigen::VectorXd eigh_dense_of(const HermitianApply& apply, std::int64_t n);

inline double eigen_gap(const Eigen::VectorXd& ascending) {
  return ascending[1] - ascending[0];
}

}  // namespace witten
