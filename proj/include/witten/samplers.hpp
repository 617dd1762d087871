#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "witten/operators.hpp"
#include "witten/potential.hpp"

namespace witten {

struct SamplerParams {
  double beta = 1.0;
  double dt = 1e-3;
  std::int64_t n_steps = 0;
  std::int64_t burn_in = -1;  // -1: default 10% of n_steps
};

// Real-space samples with provenance. For RELD the rows are (x,y) pairs.
struct SampleBatch {
  Eigen::MatrixXd samples;  // (n_steps - burn_in) x dim
  std::string sampler;
  std::uint64_t seed = 0;
  SamplerParams params;
  double acceptance_rate = 1.0;
};

inline constexpr double kDivergenceGuard = 1e3;  // abort when ||X|| explodes

// Unadjusted Langevin: X' = X - grad V dt + sqrt(2 dt / beta) xi.
SampleBatch ula_chain(const Potential& p, double beta, double dt,
                      std::int64_t n, const Eigen::VectorXd& x0,
                      std::uint64_t seed, std::int64_t burn_in = -1);

// ULA proposal + Metropolis-Hastings correction with the Gaussian proposal
// ratio; rejected steps repeat the current point.
SampleBatch mala_chain(const Potential& p, double beta, double dt,
                       std::int64_t n, const Eigen::VectorXd& x0,
                       std::uint64_t seed, std::int64_t burn_in = -1);

// Euler-Maruyama for both replicas with independent noise streams; swap
// events fire per step with probability 1 - exp(-mu dt) (exact thinning of
// the exponential clock) and are accepted with probability s(X,Y).
SampleBatch reld_sde(const Potential& p, const ReldParams& params, double dt,
                     std::int64_t n, const Eigen::VectorXd& x0,
                     const Eigen::VectorXd& y0, std::uint64_t seed,
                     std::int64_t burn_in = -1);

// Right-open uniform bins over [lo,hi]^dim; returns normalized densities
// (sum * bin_volume = 1). Samples outside the domain are dropped.
struct HistogramDensity {
  Eigen::VectorXd density;   // bins^dim values, row-major
  int bins = 0;
  int dim = 1;
  double lo = 0.0, hi = 0.0;
  double bin_width() const { return (hi - lo) / bins; }
  double center(int k) const { return lo + (k + 0.5) * bin_width(); }
};

HistogramDensity histogram(const SampleBatch& sb, int bins, double lo,
                           double hi, int dim_begin = 0, int dim_count = -1);

// |sum_k sqrt(hist_k) sqrt(sigma_k)| with both renormalized as unit vectors
// on the histogram's bin grid (sigma evaluated at bin centers).
double empirical_overlap(const HistogramDensity& hist, const Potential& p,
                         double beta);

}  // namespace witten
