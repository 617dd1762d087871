#include "witten/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "witten/fft.hpp"
#include "witten/parallel.hpp"

namespace witten {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

// frequency multipliers in FFT order: f(xi) for xi = pi*freq/a
Eigen::VectorXcd freq_multiplier(const GridSpec& g, double scale) {
  Eigen::VectorXcd m(g.n);
  for (int k = 0; k < g.n; ++k) m[k] = scale * g.freq_multiplier(k);
  return m;
}
}  // namespace

Eigen::VectorXd tabulate(const Potential& p, const GridSpec& g) {
  Eigen::VectorXd out(g.size());
  parallel_for(g.size(), [&](std::int64_t i) { out[i] = p.eval(g.point_at(i)); });
  return out;
}

std::vector<Eigen::VectorXd> tabulate_grad(const Potential& p,
                                           const GridSpec& g) {
  std::vector<Eigen::VectorXd> out(g.dim, Eigen::VectorXd(g.size()));
  parallel_for(g.size(), [&](std::int64_t i) {
    const Eigen::VectorXd gr = p.grad(g.point_at(i));
    for (int ax = 0; ax < g.dim; ++ax) out[ax][i] = gr[ax];
  });
  return out;
}

WaveState gibbs_state(const Potential& p, double beta, const GridSpec& g) {
  Eigen::VectorXd v = tabulate(p, g);
  const double vmin = v.minCoeff();
  Eigen::VectorXcd amp(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i)
    amp[i] = std::exp(-0.5 * beta * (v[i] - vmin));
  const double nrm = amp.norm();
  if (!(nrm > 0.0))
    throw std::runtime_error("gibbs_state: amplitudes underflowed to zero");
  amp /= nrm;
  return WaveState{std::move(amp), g};
}

void spectral_derivative(Eigen::VectorXcd& field, const GridSpec& g,
                         int axis) {
  if (axis < 0 || axis >= g.dim)
    throw std::invalid_argument("spectral_derivative: axis out of range");
  apply_axis_multiplier(field, g.dim, g.n, axis, freq_multiplier(g, 1.0) * kI);
}

// ---------------------------------------------------------------------------
// FactorSet

FactorSet FactorSet::langevin(const Potential& p, double beta,
                              const GridSpec& g) {
  if (p.dim != g.dim)
    throw std::invalid_argument("FactorSet: potential/grid dim mismatch");
  FactorSet fs;
  fs.kind_ = FactorKind::langevin;
  fs.num_factors_ = g.dim;
  fs.beta_ = beta;
  fs.base_grid_ = g;
  fs.field_grid_ = g;
  fs.v_table_ = tabulate(p, g);
  fs.grads_ = tabulate_grad(p, g);
  double r2 = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    double s = 0.0;
    for (int ax = 0; ax < g.dim; ++ax) s += fs.grads_[ax][i] * fs.grads_[ax][i];
    r2 = std::max(r2, s);
  }
  fs.grad_max_norm_ = std::sqrt(r2);
  return fs;
}

FactorSet FactorSet::reld(const Potential& p, const ReldParams& params,
                          const GridSpec& base, std::int64_t joint_guard) {
  if (!(params.beta > params.beta_prime && params.beta_prime > 0.0))
    throw std::invalid_argument("FactorSet::reld: need beta > beta' > 0");
  if (params.mu < 0.0)
    throw std::invalid_argument("FactorSet::reld: mu must be >= 0");
  FactorSet fs = langevin(p, params.beta, base);
  fs.kind_ = FactorKind::reld;
  fs.reld_ = params;
  fs.num_factors_ = 2 * base.dim + 1;
  fs.field_grid_ = GridSpec{2 * base.dim, base.n, base.half_width};
  if (fs.field_grid_.size() > joint_guard)
    throw std::invalid_argument("FactorSet::reld: joint grid exceeds guard");
  // sqrt s(x,y) = exp(min(0, (beta-beta')(V(x)-V(y))) / 2), two lookups into
  // the base-grid table of V per joint point
  const std::int64_t m = base.size();
  fs.sqrt_s_.resize(m * m);
  const double db = params.beta - params.beta_prime;
  const Eigen::VectorXd& vt = fs.v_table_;
  parallel_for(m * m, [&](std::int64_t idx) {
    const std::int64_t ix = idx / m, iy = idx % m;
    fs.sqrt_s_[idx] = std::exp(0.5 * std::min(0.0, db * (vt[ix] - vt[iy])));
  });
  return fs;
}

Eigen::VectorXcd swap_apply(const Eigen::VectorXcd& v, std::int64_t half) {
  if (v.size() != half * half)
    throw std::invalid_argument("swap_apply: joint grid is not a square");
  Eigen::VectorXcd out(v.size());
  parallel_for(half * half, [&](std::int64_t idx) {
    const std::int64_t ix = idx / half, iy = idx % half;
    out[idx] = v[iy * half + ix];
  });
  return out;
}

Eigen::VectorXcd FactorSet::apply(int j, const Eigen::VectorXcd& v) const {
  if (j < 0 || j >= num_factors_)
    throw std::invalid_argument("FactorSet::apply: factor index");
  if (v.size() != field_size())
    throw std::invalid_argument("FactorSet::apply: field size");
  const std::int64_t m = base_grid_.size();

  if (kind_ == FactorKind::reld && j == num_factors_ - 1) {
    // L_s = sqrt(mu/2) (I - W) diag(sqrt s)
    Eigen::VectorXcd t(v.size());
    parallel_for(v.size(), [&](std::int64_t i) { t[i] = sqrt_s_[i] * v[i]; });
    Eigen::VectorXcd wt = swap_apply(t, m);
    const double c = std::sqrt(reld_.mu / 2.0);
    parallel_for(v.size(), [&](std::int64_t i) { t[i] = c * (t[i] - wt[i]); });
    return t;
  }

  const bool is_y = (kind_ == FactorKind::reld) && j >= base_grid_.dim;
  const int comp = is_y ? j - base_grid_.dim : j;  // gradient component
  const double beta = is_y ? reld_.beta_prime : beta_;
  // derivative part: -(i/sqrt(beta)) * (i pi xi / a) = (pi xi / a)/sqrt(beta)
  Eigen::VectorXcd out = v;
  apply_axis_multiplier(out, field_grid_.dim, field_grid_.n, j,
                        freq_multiplier(base_grid_, 1.0 / std::sqrt(beta)));
  const std::complex<double> c = -kI * 0.5 * std::sqrt(beta);
  const Eigen::VectorXd& gt = grads_[comp];
  if (kind_ == FactorKind::langevin) {
    parallel_for(out.size(), [&](std::int64_t i) { out[i] += c * gt[i] * v[i]; });
  } else if (!is_y) {  // x-replica factor: table indexed by the x part
    parallel_for(out.size(), [&](std::int64_t i) { out[i] += c * gt[i / m] * v[i]; });
  } else {  // y-replica factor: table indexed by the y part
    parallel_for(out.size(), [&](std::int64_t i) { out[i] += c * gt[i % m] * v[i]; });
  }
  return out;
}

Eigen::VectorXcd FactorSet::adjoint_apply(int j,
                                          const Eigen::VectorXcd& w) const {
  if (j < 0 || j >= num_factors_)
    throw std::invalid_argument("FactorSet::adjoint_apply: factor index");
  if (w.size() != field_size())
    throw std::invalid_argument("FactorSet::adjoint_apply: field size");
  const std::int64_t m = base_grid_.size();

  if (kind_ == FactorKind::reld && j == num_factors_ - 1) {
    // L_s^dagger = sqrt(mu/2) diag(sqrt s) (I - W)
    Eigen::VectorXcd wt = swap_apply(w, m);
    Eigen::VectorXcd out(w.size());
    const double c = std::sqrt(reld_.mu / 2.0);
    parallel_for(w.size(),
                 [&](std::int64_t i) { out[i] = c * sqrt_s_[i] * (w[i] - wt[i]); });
    return out;
  }

  const bool is_y = (kind_ == FactorKind::reld) && j >= base_grid_.dim;
  const int comp = is_y ? j - base_grid_.dim : j;
  const double beta = is_y ? reld_.beta_prime : beta_;
  Eigen::VectorXcd out = w;
  apply_axis_multiplier(out, field_grid_.dim, field_grid_.n, j,
                        freq_multiplier(base_grid_, 1.0 / std::sqrt(beta)));
  const std::complex<double> c = kI * 0.5 * std::sqrt(beta);  // sign flip
  const Eigen::VectorXd& gt = grads_[comp];
  if (kind_ == FactorKind::langevin) {
    parallel_for(out.size(), [&](std::int64_t i) { out[i] += c * gt[i] * w[i]; });
  } else if (!is_y) {
    parallel_for(out.size(), [&](std::int64_t i) { out[i] += c * gt[i / m] * w[i]; });
  } else {
    parallel_for(out.size(), [&](std::int64_t i) { out[i] += c * gt[i % m] * w[i]; });
  }
  return out;
}

Eigen::VectorXcd FactorSet::witten_apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size());
  for (int j = 0; j < num_factors_; ++j) acc += adjoint_apply(j, apply(j, v));
  return acc;
}

Eigen::MatrixXcd FactorSet::dense(int j) const {
  const std::int64_t n = field_size();
  Eigen::MatrixXcd out(n, n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  for (std::int64_t col = 0; col < n; ++col) {
    e[col] = 1.0;
    out.col(col) = apply(j, e);
    e[col] = 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// normalization factors

double alpha_normalization(const Potential& p, const GridSpec& g,
                           double beta) {
  double r2 = 0.0;
  Eigen::VectorXd row(g.dim);
  for (std::int64_t i = 0; i < g.size(); ++i)
    r2 = std::max(r2, p.grad(g.point_at(i)).squaredNorm());
  const double R = std::sqrt(r2);
  return M_PI * g.n * std::sqrt(double(g.dim) / beta) / (2.0 * g.half_width) +
         std::sqrt(beta) * R / 2.0;
}

double alpha_normalization(const FactorSet& fs) {
  const GridSpec& g = fs.base_grid();
  return M_PI * g.n * std::sqrt(double(g.dim) / fs.beta()) /
             (2.0 * g.half_width) +
         std::sqrt(fs.beta()) * fs.grad_max_norm() / 2.0;
}

namespace {
double reld_alpha_impl(double R, const GridSpec& g, const ReldParams& p) {
  const double freq = M_PI * g.n * std::sqrt(double(g.dim)) /
                      (2.0 * g.half_width);
  const double a1 = freq / std::sqrt(p.beta) + std::sqrt(p.beta) * R / 2.0;
  const double a2 =
      freq / std::sqrt(p.beta_prime) + std::sqrt(p.beta_prime) * R / 2.0;
  return std::sqrt(a1 * a1 + a2 * a2 + 2.0 * p.mu);
}
}  // namespace

double reld_alpha(const Potential& p, const ReldParams& params,
                  const GridSpec& g) {
  double r2 = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    r2 = std::max(r2, p.grad(g.point_at(i)).squaredNorm());
  return reld_alpha_impl(std::sqrt(r2), g, params);
}

double reld_alpha(const FactorSet& fs) {
  return reld_alpha_impl(fs.grad_max_norm(), fs.base_grid(), fs.reld_params());
}

// ---------------------------------------------------------------------------
// BlockOperator

BlockOperator::BlockOperator(FactorSet fs)
    : fs_(std::make_shared<FactorSet>(std::move(fs))) {
  alpha_ = fs_->kind() == FactorKind::langevin ? alpha_normalization(*fs_)
                                               : reld_alpha(*fs_);
}

Eigen::VectorXcd BlockOperator::apply(const Eigen::VectorXcd& v) const {
  const std::int64_t n = fs_->field_size();
  Eigen::VectorXcd out(rows());
  for (int j = 0; j < fs_->num_factors(); ++j)
    out.segment(j * n, n) = fs_->apply(j, v);
  return out;
}

Eigen::VectorXcd BlockOperator::adjoint_apply(const Eigen::VectorXcd& w) const {
  const std::int64_t n = fs_->field_size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int j = 0; j < fs_->num_factors(); ++j)
    out += fs_->adjoint_apply(j, w.segment(j * n, n));
  return out;
}

Eigen::MatrixXcd BlockOperator::dense(std::int64_t dense_guard) const {
  const std::int64_t n = cols();
  if (n > dense_guard)
    throw std::runtime_error("BlockOperator::dense: guard exceeded");
  Eigen::MatrixXcd out(rows(), n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  for (std::int64_t col = 0; col < n; ++col) {
    e[col] = 1.0;
    out.col(col) = apply(e);
    e[col] = 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// direct form

namespace {
// beta |grad V|^2 / 4 - (Delta V)/2 on the grid; Delta V analytic when
// available, else spectral differentiation of the tabulated gradient.
Eigen::VectorXd direct_potential_term(const Potential& p, double beta,
                                      const GridSpec& g) {
  const auto grads = tabulate_grad(p, g);
  Eigen::VectorXd lap(g.size());
  if (p.has_laplacian()) {
    parallel_for(g.size(),
                 [&](std::int64_t i) { lap[i] = p.laplacian(g.point_at(i)); });
  } else {
    lap.setZero();
    for (int ax = 0; ax < g.dim; ++ax) {
      Eigen::VectorXcd t = grads[ax].cast<std::complex<double>>();
      spectral_derivative(t, g, ax);
      lap += t.real();
    }
  }
  Eigen::VectorXd pot(g.size());
  parallel_for(g.size(), [&](std::int64_t i) {
    double g2 = 0.0;
    for (int ax = 0; ax < g.dim; ++ax) g2 += grads[ax][i] * grads[ax][i];
    pot[i] = beta * g2 / 4.0 - lap[i] / 2.0;
  });
  return pot;
}

void subtract_laplacian(Eigen::VectorXcd& acc, const Eigen::VectorXcd& v,
                        const GridSpec& field, const GridSpec& base,
                        double beta, int axis_begin, int axis_end) {
  for (int ax = axis_begin; ax < axis_end; ++ax) {
    Eigen::VectorXcd t = v;
    Eigen::VectorXcd m2(base.n);
    for (int k = 0; k < base.n; ++k) {
      const double w = base.freq_multiplier(k);
      m2[k] = w * w / beta;  // -(1/beta) * (i w)^2
    }
    apply_axis_multiplier(t, field.dim, field.n, ax, m2);
    acc += t;
  }
}
}  // namespace

WittenDirect::WittenDirect(const Potential& p, double beta, const GridSpec& g)
    : grid_(g), beta_(beta), pot_(direct_potential_term(p, beta, g)) {}

Eigen::VectorXcd WittenDirect::apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size());
  subtract_laplacian(acc, v, grid_, grid_, beta_, 0, grid_.dim);
  parallel_for(v.size(), [&](std::int64_t i) { acc[i] += pot_[i] * v[i]; });
  return acc;
}

Eigen::MatrixXcd witten_dense_direct(const Potential& p, double beta,
                                     const GridSpec& g,
                                     std::int64_t dense_guard) {
  if (g.size() > dense_guard)
    throw std::runtime_error("witten_dense_direct: guard exceeded");
  WittenDirect op(p, beta, g);
  const std::int64_t n = g.size();
  Eigen::MatrixXcd out(n, n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  for (std::int64_t col = 0; col < n; ++col) {
    e[col] = 1.0;
    out.col(col) = op.apply(e);
    e[col] = 0.0;
  }
  return out;
}

ReldDirect::ReldDirect(const Potential& p, const ReldParams& params,
                       const GridSpec& base)
    : base_grid_(base), params_(params) {
  pot_x_ = direct_potential_term(p, params.beta, base);
  pot_y_ = direct_potential_term(p, params.beta_prime, base);
  const Eigen::VectorXd vt = tabulate(p, base);
  const std::int64_t m = base.size();
  sqrt_s_.resize(m * m);
  const double db = params.beta - params.beta_prime;
  parallel_for(m * m, [&](std::int64_t idx) {
    sqrt_s_[idx] =
        std::exp(0.5 * std::min(0.0, db * (vt[idx / m] - vt[idx % m])));
  });
}

Eigen::VectorXcd ReldDirect::apply(const Eigen::VectorXcd& v) const {
  const std::int64_t m = base_grid_.size();
  const GridSpec field{2 * base_grid_.dim, base_grid_.n,
                       base_grid_.half_width};
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(v.size());
  subtract_laplacian(acc, v, field, base_grid_, params_.beta, 0,
                     base_grid_.dim);
  subtract_laplacian(acc, v, field, base_grid_, params_.beta_prime,
                     base_grid_.dim, 2 * base_grid_.dim);
  // mu sqrt(S)(I - W) sqrt(S) plus the two Langevin potential terms
  Eigen::VectorXcd t(v.size());
  parallel_for(v.size(), [&](std::int64_t i) { t[i] = sqrt_s_[i] * v[i]; });
  Eigen::VectorXcd wt = swap_apply(t, m);
  parallel_for(v.size(), [&](std::int64_t i) {
    acc[i] += (pot_x_[i / m] + pot_y_[i % m]) * v[i] +
              params_.mu * sqrt_s_[i] * (t[i] - wt[i]);
  });
  return acc;
}

}  // namespace witten
