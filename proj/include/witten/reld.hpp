#pragma once

#include <Eigen/Dense>

#include "witten/operators.hpp"

namespace witten {

// Metropolis swap probability exp(min(0, (beta-beta')(V(x)-V(y)))).
double swap_rate(const Potential& p, const ReldParams& params,
                 const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Unit-norm product state sqrt(sigma_beta) (x) sqrt(sigma_beta') on the
// joint grid (x slow, y fast).
WaveState joint_gibbs_state(const Potential& p, const ReldParams& params,
                            const GridSpec& base_grid);

// Sum of |amplitudes|^2 over the y register: the x-marginal cell
// probabilities of a joint state.
Eigen::VectorXd marginal_x(const WaveState& joint, const GridSpec& base_grid);

// x-coordinates of joint (x,y) sample rows.
Eigen::MatrixXd marginal_x(const Eigen::MatrixXd& joint_samples, int dim);

}  // namespace witten
