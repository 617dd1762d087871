#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

#include "witten/chebyshev.hpp"
#include "witten/operators.hpp"
#include "witten/spectral_report.hpp"

namespace witten {

enum class SvtRoute { svd, recurrence };

struct SvtResult {
  WaveState state;
  double success_probability = 0.0;  // ||unnormalized filtered state||^2
  double residual = 0.0;             // ||L state|| / alpha
  SvtRoute route = SvtRoute::recurrence;
  FilterSpec filter;
  int degree = 0;
};

inline constexpr double kSuccessFloor = 1e-8;  // post-selection floor, on the
                                               // filtered-state norm

// Explicit SVD filtering: Pi = V P(Sigma/alpha) V^dagger applied to phi.
SvtResult threshold_svd(const BlockOperator& b, const FilterSpec& fs,
                        const WaveState& phi, std::int64_t dense_guard = 4096);

// Matrix-free route: the even part of P, expressed as a Chebyshev series in
// the rescaled Hamiltonian 2H/alpha^2 - 1, applied by the three-term operator
// recurrence using only witten_apply.
SvtResult threshold_recurrence(const BlockOperator& b, const FilterSpec& fs,
                               const WaveState& phi);

// Chebyshev coefficients of the eigenvalue-axis filter: for an even series
// sum c_j T_j(x), returns q with sum_k q_k T_k(y), y = 2 x^2 - 1.
Eigen::VectorXd eigenvalue_axis_coefficients(const Eigen::VectorXd& coeffs);

struct PrepareOptions {
  double eps = 1e-3;              // filter design error target
  double degree_constant = 2.0;   // C in degree_for
  std::optional<double> gap_hint; // singular-gap estimate, skips the eigensolve
  SvtRoute route = SvtRoute::recurrence;
  SpectralOptions spectral;
  // JSON-lines stage log sink (one line per pipeline stage); optional.
  std::function<void(const std::string&)> log;
};

struct PrepareOutcome {
  SvtResult result;
  SpectralReport report;
  double warm_overlap = 0.0;  // |<phi | gibbs>| diagnostic
  double alpha = 0.0;
};

// End-to-end pipeline: factors -> alpha -> gap estimate -> filter design ->
// threshold. The gap is never silently guessed: it comes from the eigensolve
// or from gap_hint.
PrepareOutcome prepare_gibbs(const Potential& p, double beta,
                             const GridSpec& g, const WaveState& phi,
                             const PrepareOptions& opts = {});

}  // namespace witten
