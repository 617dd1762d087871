#include "witten/svt.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "witten/lapack.hpp"

namespace witten {

namespace {
SvtResult finish(const BlockOperator& b, const FilterSpec& fs,
                 Eigen::VectorXcd filtered, const GridSpec& g, SvtRoute route) {
  SvtResult r;
  const double nrm = filtered.norm();
  r.success_probability = nrm * nrm;
  if (nrm < kSuccessFloor)
    throw std::runtime_error(
        "svt: filtered-state norm below the post-selection floor (cold start "
        "or wrong gap estimate)");
  filtered /= nrm;
  r.residual = b.apply(filtered).norm() / b.alpha();
  r.state = WaveState{std::move(filtered), g};
  r.route = route;
  r.filter = fs;
  r.degree = fs.degree;
  return r;
}
}  // namespace

SvtResult threshold_svd(const BlockOperator& b, const FilterSpec& fs,
                        const WaveState& phi, std::int64_t dense_guard) {
  Eigen::VectorXd s;
  Eigen::MatrixXcd v;
  svd_right(b.dense(dense_guard), s, v);
  Eigen::VectorXcd c = v.adjoint() * phi.amplitudes;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c[i] *= evaluate_filter(fs, s[i] / b.alpha());
  return finish(b, fs, v * c, phi.grid, SvtRoute::svd);
}

Eigen::VectorXd eigenvalue_axis_coefficients(const Eigen::VectorXd& c) {
  // T_{2k}(x) = T_k(2x^2 - 1): the even part of the series maps directly.
  const int half = (int(c.size()) - 1) / 2;
  Eigen::VectorXd q(half + 1);
  for (int k = 0; k <= half; ++k) q[k] = c[2 * k];
  return q;
}

SvtResult threshold_recurrence(const BlockOperator& b, const FilterSpec& fs,
                               const WaveState& phi) {
  // evenness precondition: odd coefficients must be negligible
  double odd = 0.0;
  for (int j = 1; j < fs.coeffs.size(); j += 2)
    odd = std::max(odd, std::abs(fs.coeffs[j]));
  if (odd > 1e-8)
    throw std::invalid_argument(
        "threshold_recurrence: filter polynomial is not even");
  for (int j = 0; j < fs.coeffs.size(); ++j)
    if (!std::isfinite(fs.coeffs[j]))
      throw std::runtime_error("threshold_recurrence: non-finite coefficient");

  const Eigen::VectorXd q = eigenvalue_axis_coefficients(fs.coeffs);
  const double a2 = b.alpha() * b.alpha();
  auto y_apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return (2.0 / a2) * b.witten_apply(v) - v;
  };
  // Clenshaw with operator argument: b_k = q_k v + 2 Y b_{k+1} - b_{k+2}
  Eigen::VectorXcd b1 = Eigen::VectorXcd::Zero(phi.amplitudes.size());
  Eigen::VectorXcd b2 = b1;
  for (int k = int(q.size()) - 1; k >= 1; --k) {
    Eigen::VectorXcd t = 2.0 * y_apply(b1) - b2 + q[k] * phi.amplitudes;
    b2.swap(b1);
    b1.swap(t);
  }
  Eigen::VectorXcd out = y_apply(b1) - b2 + q[0] * phi.amplitudes;
  out = fs.scale * out + fs.shift * phi.amplitudes;
  return finish(b, fs, std::move(out), phi.grid, SvtRoute::recurrence);
}

PrepareOutcome prepare_gibbs(const Potential& p, double beta,
                             const GridSpec& g, const WaveState& phi,
                             const PrepareOptions& opts) {
  auto log = [&](const std::string& stage, const std::string& fields) {
    if (opts.log) opts.log("{\"stage\":\"" + stage + "\"," + fields + "}");
  };
  PrepareOutcome out;
  BlockOperator block(FactorSet::langevin(p, beta, g));
  out.alpha = block.alpha();
  {
    std::ostringstream ss;
    ss << "\"alpha\":" << out.alpha;
    log("assemble", ss.str());
  }

  const WaveState gibbs = gibbs_state(p, beta, g);
  out.warm_overlap = std::abs(gibbs.amplitudes.dot(phi.amplitudes));
  {
    std::ostringstream ss;
    ss << "\"overlap\":" << out.warm_overlap;
    log("warm-start", ss.str());
  }

  double singular_gap;
  if (opts.gap_hint) {
    singular_gap = *opts.gap_hint;
    out.report.gap = singular_gap;
    out.report.hamiltonian_gap = singular_gap * singular_gap;
    out.report.poincare_constant = 1.0 / out.report.hamiltonian_gap;
    out.report.method = SpectralMode::iterative_deflated;
  } else {
    out.report = spectral_report(block, SpectralMode::iterative_deflated,
                                 gibbs, opts.spectral);
    singular_gap = out.report.gap;
  }
  {
    std::ostringstream ss;
    ss << "\"gap\":" << singular_gap;
    log("gap-estimate", ss.str());
  }

  const double ghat = singular_gap / out.alpha;
  const double s1 = ghat / 4.0, s2 = 3.0 * ghat / 4.0;
  const int degree = degree_for(s2 - s1, opts.eps, opts.degree_constant);
  FilterSpec fs = design_filter(s1, s2, (s2 - s1) / 4.0, degree, 0, opts.eps);
  {
    std::ostringstream ss;
    ss << "\"s1\":" << s1 << ",\"s2\":" << s2 << ",\"degree\":" << degree;
    log("filter-design", ss.str());
  }

  out.result = opts.route == SvtRoute::svd
                   ? threshold_svd(block, fs, phi)
                   : threshold_recurrence(block, fs, phi);
  {
    std::ostringstream ss;
    ss << "\"success_probability\":" << out.result.success_probability
       << ",\"residual\":" << out.result.residual << ",\"fidelity\":"
       << std::abs(gibbs.amplitudes.dot(out.result.state.amplitudes));
    log("threshold", ss.str());
  }
  return out;
}

}  // namespace witten
