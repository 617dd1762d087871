#include "witten/samplers.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "witten/reld.hpp"
#include "witten/rng.hpp"

namespace witten {

namespace {
std::int64_t default_burn(std::int64_t n, std::int64_t burn_in) {
  if (burn_in < 0) return n / 10;
  if (burn_in >= n) throw std::invalid_argument("burn_in >= n_steps");
  return burn_in;
}

void check_finite(const Eigen::VectorXd& x, const char* who) {
  if (!x.allFinite() || x.norm() > kDivergenceGuard)
    throw std::runtime_error(std::string(who) +
                             ": chain diverged (step size too large)");
}
}  // namespace

SampleBatch ula_chain(const Potential& p, double beta, double dt,
                      std::int64_t n, const Eigen::VectorXd& x0,
                      std::uint64_t seed, std::int64_t burn_in) {
  if (dt <= 0.0) throw std::invalid_argument("ula_chain: dt must be > 0");
  const std::int64_t burn = default_burn(n, burn_in);
  auto rng = make_stream(seed, 0);
  std::normal_distribution<double> gauss;
  const double noise = std::sqrt(2.0 * dt / beta);
  Eigen::VectorXd x = x0;
  SampleBatch out;
  out.samples.resize(n - burn, p.dim);
  out.sampler = "ula";
  out.seed = seed;
  out.params = {beta, dt, n, burn};
  for (std::int64_t k = 0; k < n; ++k) {
    Eigen::VectorXd g = p.grad(x);
    for (int i = 0; i < p.dim; ++i) x[i] += -g[i] * dt + noise * gauss(rng);
    check_finite(x, "ula_chain");
    if (k >= burn) out.samples.row(k - burn) = x;
  }
  return out;
}

SampleBatch mala_chain(const Potential& p, double beta, double dt,
                       std::int64_t n, const Eigen::VectorXd& x0,
                       std::uint64_t seed, std::int64_t burn_in) {
  if (dt <= 0.0) throw std::invalid_argument("mala_chain: dt must be > 0");
  const std::int64_t burn = default_burn(n, burn_in);
  auto rng = make_stream(seed, 0);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double noise = std::sqrt(2.0 * dt / beta);
  Eigen::VectorXd x = x0;
  Eigen::VectorXd gx = p.grad(x);
  double vx = p.eval(x);
  SampleBatch out;
  out.samples.resize(n - burn, p.dim);
  out.sampler = "mala";
  out.seed = seed;
  out.params = {beta, dt, n, burn};
  std::int64_t accepted = 0;
  Eigen::VectorXd prop(p.dim);
  for (std::int64_t k = 0; k < n; ++k) {
    for (int i = 0; i < p.dim; ++i)
      prop[i] = x[i] - gx[i] * dt + noise * gauss(rng);
    const Eigen::VectorXd gp = p.grad(prop);
    const double vp = p.eval(prop);
    // log q(x|x') - log q(x'|x) with q(y|x) ~ N(x - grad V(x) dt, 2dt/beta)
    const double fwd = (prop - x + gx * dt).squaredNorm();
    const double bwd = (x - prop + gp * dt).squaredNorm();
    const double log_acc = -beta * (vp - vx) + beta * (fwd - bwd) / (4.0 * dt);
    if (std::log(unif(rng)) < log_acc) {
      x = prop;
      gx = gp;
      vx = vp;
      ++accepted;
    }
    check_finite(x, "mala_chain");
    if (k >= burn) out.samples.row(k - burn) = x;
  }
  out.acceptance_rate = double(accepted) / double(n);
  return out;
}

SampleBatch reld_sde(const Potential& p, const ReldParams& params, double dt,
                     std::int64_t n, const Eigen::VectorXd& x0,
                     const Eigen::VectorXd& y0, std::uint64_t seed,
                     std::int64_t burn_in) {
  if (dt <= 0.0) throw std::invalid_argument("reld_sde: dt must be > 0");
  const std::int64_t burn = default_burn(n, burn_in);
  auto rng_x = make_stream(seed, 0);  // shared with ula_chain for coupling
  auto rng_y = make_stream(seed, 1);
  auto rng_clock = make_stream(seed, 2);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double nx = std::sqrt(2.0 * dt / params.beta);
  const double ny = std::sqrt(2.0 * dt / params.beta_prime);
  const double p_event = 1.0 - std::exp(-params.mu * dt);
  Eigen::VectorXd x = x0, y = y0;
  SampleBatch out;
  out.samples.resize(n - burn, 2 * p.dim);
  out.sampler = "reld";
  out.seed = seed;
  out.params = {params.beta, dt, n, burn};
  std::int64_t events = 0, swaps = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    Eigen::VectorXd gx = p.grad(x);
    for (int i = 0; i < p.dim; ++i) x[i] += -gx[i] * dt + nx * gauss(rng_x);
    Eigen::VectorXd gy = p.grad(y);
    for (int i = 0; i < p.dim; ++i) y[i] += -gy[i] * dt + ny * gauss(rng_y);
    if (p_event > 0.0 && unif(rng_clock) < p_event) {
      ++events;
      if (unif(rng_clock) < swap_rate(p, params, x, y)) {
        x.swap(y);
        ++swaps;
      }
    }
    check_finite(x, "reld_sde");
    check_finite(y, "reld_sde");
    if (k >= burn) {
      out.samples.row(k - burn).head(p.dim) = x;
      out.samples.row(k - burn).tail(p.dim) = y;
    }
  }
  out.acceptance_rate = events > 0 ? double(swaps) / double(events) : 1.0;
  return out;
}

HistogramDensity histogram(const SampleBatch& sb, int bins, double lo,
                           double hi, int dim_begin, int dim_count) {
  if (bins < 2) throw std::invalid_argument("histogram: bins must be >= 2");
  const int dim = dim_count < 0 ? int(sb.samples.cols()) : dim_count;
  HistogramDensity h;
  h.bins = bins;
  h.dim = dim;
  h.lo = lo;
  h.hi = hi;
  std::int64_t cells = 1;
  for (int i = 0; i < dim; ++i) cells *= bins;
  h.density = Eigen::VectorXd::Zero(cells);
  const double w = h.bin_width();
  std::int64_t kept = 0;
  for (Eigen::Index r = 0; r < sb.samples.rows(); ++r) {
    std::int64_t idx = 0;
    bool inside = true;
    for (int i = 0; i < dim && inside; ++i) {
      const double v = sb.samples(r, dim_begin + i);
      const int b = static_cast<int>(std::floor((v - lo) / w));  // right-open
      if (b < 0 || b >= bins) inside = false;
      idx = idx * bins + b;
    }
    if (!inside) continue;
    h.density[idx] += 1.0;
    ++kept;
  }
  if (kept == 0) throw std::runtime_error("histogram: no samples in domain");
  double vol = 1.0;
  for (int i = 0; i < dim; ++i) vol *= w;
  h.density /= double(kept) * vol;
  return h;
}

double empirical_overlap(const HistogramDensity& hist, const Potential& p,
                         double beta) {
  std::int64_t cells = hist.density.size();
  Eigen::VectorXd sq = hist.density.cwiseMax(0.0).cwiseSqrt();
  Eigen::VectorXd sig(cells);
  Eigen::VectorXd pt(hist.dim);
  std::vector<int> k(hist.dim);
  double vmin = std::numeric_limits<double>::infinity();
  std::vector<double> vs(cells);
  for (std::int64_t c = 0; c < cells; ++c) {
    std::int64_t rem = c;
    for (int i = hist.dim - 1; i >= 0; --i) {
      k[i] = int(rem % hist.bins);
      rem /= hist.bins;
    }
    for (int i = 0; i < hist.dim; ++i) pt[i] = hist.center(k[i]);
    vs[c] = p.eval(pt);
    vmin = std::min(vmin, vs[c]);
  }
  for (std::int64_t c = 0; c < cells; ++c)
    sig[c] = std::exp(-0.5 * beta * (vs[c] - vmin));
  sq.normalize();
  sig.normalize();
  return std::abs(sq.dot(sig));
}

}  // namespace witten
