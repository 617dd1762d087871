#include "witten/spectral_report.hpp"

#include <algorithm>
#include <stdexcept>

#include "witten/lapack.hpp"

namespace witten {

double deflated_smallest_eigenvalue(const HermitianApply& apply,
                                    std::int64_t n,
                                    const Eigen::VectorXcd& kernel_vector,
                                    double scale_bound,
                                    const SpectralOptions& opts,
                                    LanczosResult* details) {
  LanczosOptions lo = opts.lanczos;
  lo.num_values = std::max(lo.num_values, 3);
  LanczosResult res = lanczos_smallest(apply, n, {kernel_vector}, lo);
  if (details) *details = res;
  const double floor = std::max(opts.kernel_floor_abs,
                                opts.kernel_floor_rel * scale_bound);
  for (double v : res.values)
    if (v > floor) return v;
  throw std::runtime_error(
      "deflated eigensolve: no Ritz value above the kernel floor "
      "(residual " + std::to_string(res.residual) + ")");
}

Eigen::VectorXd eigh_dense_of(const HermitianApply& apply, std::int64_t n) {
  Eigen::MatrixXcd h(n, n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  for (std::int64_t c = 0; c < n; ++c) {
    e[c] = 1.0;
    h.col(c) = apply(e);
    e[c] = 0.0;
  }
  return eigh_values(h);
}

SpectralReport spectral_report(const BlockOperator& b, SpectralMode mode,
                               const std::optional<WaveState>& gibbs,
                               const SpectralOptions& opts) {
  SpectralReport rep;
  rep.method = mode;
  if (mode == SpectralMode::dense_svd) {
    Eigen::VectorXd s = singular_values(b.dense(opts.dense_guard));
    std::sort(s.data(), s.data() + s.size());
    rep.singular_values = s;
    const double s1 = s[0], s2 = s[1];
    const double kernel_tol = 1e-8 * std::max(1.0, s[s.size() - 1]);
    rep.gap = s1 <= kernel_tol ? s2 : s2 - s1;
    rep.hamiltonian_gap = s2 * s2 - s1 * s1;
  } else {
    if (!gibbs)
      throw std::invalid_argument(
          "spectral_report: iterative mode needs the Gibbs deflation vector");
    LanczosResult det;
    const double a2 = b.alpha() * b.alpha();
    const double lam = deflated_smallest_eigenvalue(
        [&](const Eigen::VectorXcd& v) { return b.witten_apply(v); }, b.cols(),
        gibbs->amplitudes, a2, opts, &det);
    rep.hamiltonian_gap = lam;
    rep.gap = std::sqrt(lam);
    rep.converged = det.converged;
    rep.residual = det.residual;
    rep.applies = det.applies;
  }
  rep.poincare_constant = 1.0 / rep.hamiltonian_gap;
  return rep;
}

}  // namespace witten
