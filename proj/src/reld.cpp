#include "witten/reld.hpp"

#include <cmath>
#include <stdexcept>

namespace witten {

double swap_rate(const Potential& p, const ReldParams& params,
                 const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double e =
      (params.beta - params.beta_prime) * (p.eval(x) - p.eval(y));
  return std::exp(std::min(0.0, e));
}

WaveState joint_gibbs_state(const Potential& p, const ReldParams& params,
                            const GridSpec& base) {
  const WaveState gx = gibbs_state(p, params.beta, base);
  const WaveState gy = gibbs_state(p, params.beta_prime, base);
  const std::int64_t m = base.size();
  Eigen::VectorXcd amp(m * m);
  for (std::int64_t ix = 0; ix < m; ++ix)
    for (std::int64_t iy = 0; iy < m; ++iy)
      amp[ix * m + iy] = gx.amplitudes[ix] * gy.amplitudes[iy];
  WaveState out{std::move(amp), GridSpec{2 * base.dim, base.n, base.half_width}};
  out.normalize();
  return out;
}

Eigen::VectorXd marginal_x(const WaveState& joint, const GridSpec& base) {
  const std::int64_t m = base.size();
  if (joint.amplitudes.size() != m * m)
    throw std::invalid_argument("marginal_x: joint state size mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
  for (std::int64_t ix = 0; ix < m; ++ix)
    for (std::int64_t iy = 0; iy < m; ++iy)
      out[ix] += std::norm(joint.amplitudes[ix * m + iy]);
  return out;
}

Eigen::MatrixXd marginal_x(const Eigen::MatrixXd& joint_samples, int dim) {
  if (joint_samples.cols() != 2 * dim)
    throw std::invalid_argument("marginal_x: samples are not (x,y) pairs");
  return joint_samples.leftCols(dim);
}

}  // namespace witten
