#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace witten {

using HermitianApply =
    std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

struct LanczosOptions {
  int num_values = 2;        // smallest Ritz values to extract
  int basis = 120;           // Krylov basis size before a thick restart
  int keep = 20;             // Ritz vectors kept across restarts
  double tol = 1e-8;         // Ritz residual tolerance (relative to |theta|)
  int max_applies = 5000;    // matrix-application budget
  std::uint64_t seed = 12345;
};

struct LanczosResult {
  std::vector<double> values;  // ascending Ritz values of the deflated op
  double residual = 0.0;       // residual of the smallest Ritz pair
  int applies = 0;
  bool converged = false;
};

// Smallest eigenvalues of P A P where P projects out the deflation vectors.
// Thick-restart Lanczos with full reorthogonalization inside the basis.
LanczosResult lanczos_smallest(const HermitianApply& apply, std::int64_t n,
                               const std::vector<Eigen::VectorXcd>& deflation,
                               const LanczosOptions& opts = {});

}  // namespace witten
