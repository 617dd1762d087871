#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "witten/operators.hpp"
#include "witten/samplers.hpp"

namespace witten {

// Amplitudes over a refined grid with M = 2^r points per axis.
struct FineState {
  Eigen::VectorXcd amplitudes;
  GridSpec grid;  // same half-width, M points per axis
};

inline constexpr std::int64_t kFineGuard = std::int64_t(1) << 20;

// Frequency zero-padding to M = 2^r points per axis (the trigonometric
// interpolant sampled on the fine mesh). The Nyquist coefficient is split
// evenly between the +-N/2 slots so real inputs stay real; the result is
// renormalized.
FineState boost_resolution(const WaveState& v, int r,
                           std::int64_t guard = kFineGuard);

// Draw n cells with probability |amplitude|^2 and jitter uniformly within
// each cell; deterministic per seed.
SampleBatch measure_and_jitter(const FineState& f, std::int64_t n,
                               std::uint64_t seed);

// (1/2) sum |p - q| * cell_volume for densities on a common grid.
double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                   double cell_volume);

// sum (p/sigma - 1)^2 sigma * cell_volume, sigma floor-masked.
double chi2_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& sigma,
                       double cell_volume, double floor = 1e-300);

// |<u|v>| for unit states on the same grid.
double state_overlap(const WaveState& u, const WaveState& v);

// Riemann-normalized exp(-beta V) on a grid (density values).
Eigen::VectorXd exact_density(const Potential& p, double beta,
                              const GridSpec& g);

}  // namespace witten
