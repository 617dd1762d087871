#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "witten/grid.hpp"
#include "witten/potential.hpp"

namespace witten {

// Unit-norm complex amplitude vector over a grid (encoded sqrt-density).
struct WaveState {
  Eigen::VectorXcd amplitudes;
  GridSpec grid;

  double norm() const { return amplitudes.norm(); }
  void normalize() { amplitudes /= amplitudes.norm(); }
};

// amplitudes ~ exp(-beta V/2), min-V shifted before exponentiating,
// normalized to unit Euclidean norm.
WaveState gibbs_state(const Potential& p, double beta, const GridSpec& g);

// Tabulations of V and its gradient over the grid (row-major flat order).
Eigen::VectorXd tabulate(const Potential& p, const GridSpec& g);
std::vector<Eigen::VectorXd> tabulate_grad(const Potential& p,
                                           const GridSpec& g);

// Spectral d/dx_axis: DFT^dagger diag(i pi xi / a) DFT along one axis.
void spectral_derivative(Eigen::VectorXcd& field, const GridSpec& g, int axis);

enum class FactorKind { langevin, reld };

struct ReldParams {
  double beta = 2.0;        // low-temperature chain
  double beta_prime = 1.0;  // high-temperature chain
  double mu = 1.0;          // swap intensity
};

// The discretized factors L~_j and their joint action. For kind=langevin the
// field lives on grid (dim d, size N^d); for kind=reld on the joint grid
// (dim 2d, size N^{2d}, x axes slow / y axes fast) with 2d+1 factors, the
// last being the swap factor sqrt(mu/2)(I - W) diag(sqrt s).
class FactorSet {
 public:
  static FactorSet langevin(const Potential& p, double beta,
                            const GridSpec& g);
  static FactorSet reld(const Potential& p, const ReldParams& params,
                        const GridSpec& base_grid,
                        std::int64_t joint_guard = kGridGuard);

  FactorKind kind() const { return kind_; }
  int num_factors() const { return num_factors_; }
  double beta() const { return beta_; }
  const ReldParams& reld_params() const { return reld_; }
  const GridSpec& grid() const { return field_grid_; }       // field layout
  const GridSpec& base_grid() const { return base_grid_; }   // per-replica
  std::int64_t field_size() const { return field_grid_.size(); }

  Eigen::VectorXcd apply(int j, const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd adjoint_apply(int j, const Eigen::VectorXcd& w) const;
  // sum_j L_j^dagger L_j v
  Eigen::VectorXcd witten_apply(const Eigen::VectorXcd& v) const;

  Eigen::MatrixXcd dense(int j) const;  // column-by-column materialization

  const Eigen::VectorXd& potential_table() const { return v_table_; }
  const std::vector<Eigen::VectorXd>& grad_tables() const { return grads_; }
  const Eigen::VectorXd& sqrt_swap_table() const { return sqrt_s_; }
  // max over grid points of ||grad V||
  double grad_max_norm() const { return grad_max_norm_; }

 private:
  FactorKind kind_ = FactorKind::langevin;
  int num_factors_ = 0;
  double beta_ = 1.0;
  ReldParams reld_;
  GridSpec base_grid_;   // the [-a,a]^d grid of one replica
  GridSpec field_grid_;  // equals base grid (langevin) or its square (reld)
  Eigen::VectorXd v_table_;              // V on the base grid
  std::vector<Eigen::VectorXd> grads_;   // dV/dx_j on the base grid
  Eigen::VectorXd sqrt_s_;               // sqrt s(x,y) on the joint grid
  double grad_max_norm_ = 0.0;
};

// Swap permutation W psi(x,y) = psi(y,x) on the joint grid, as an index
// transpose; exact involution.
Eigen::VectorXcd swap_apply(const Eigen::VectorXcd& v,
                            std::int64_t half_size);

// Block-encoding normalization alpha = pi N sqrt(d/beta)/(2a) + sqrt(beta)R/2
// (frequency term carries the [-a,a] domain factor 1/(2a)).
double alpha_normalization(const Potential& p, const GridSpec& g, double beta);
double alpha_normalization(const FactorSet& fs);

// alpha for the RELD stack: sqrt(a1^2 + a2^2 + 2 mu) with the per-replica
// bounds a_i = pi N sqrt(d/beta_i)/(2a) + sqrt(beta_i) R/2.
double reld_alpha(const Potential& p, const ReldParams& params,
                  const GridSpec& base_grid);
double reld_alpha(const FactorSet& fs);

// Vertical stack of the factors with its normalization factor attached.
class BlockOperator {
 public:
  explicit BlockOperator(FactorSet fs);

  const FactorSet& factors() const { return *fs_; }
  double alpha() const { return alpha_; }
  std::int64_t rows() const { return fs_->num_factors() * fs_->field_size(); }
  std::int64_t cols() const { return fs_->field_size(); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd adjoint_apply(const Eigen::VectorXcd& w) const;
  Eigen::VectorXcd witten_apply(const Eigen::VectorXcd& v) const {
    return fs_->witten_apply(v);
  }

  // Dense stack; refuses when the column dimension exceeds the guard.
  Eigen::MatrixXcd dense(std::int64_t dense_guard = 4096) const;

 private:
  std::shared_ptr<const FactorSet> fs_;
  double alpha_ = 0.0;
};

// Matrix-free direct-form Witten action
//   -(1/beta) Delta v + (beta ||grad V||^2/4 - Delta V/2) v,
// with Delta V from the analytic laplacian when the potential has one, else
// from spectral differentiation of the tabulated gradient.
class WittenDirect {
 public:
  WittenDirect(const Potential& p, double beta, const GridSpec& g);
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  const Eigen::VectorXd& potential_term() const { return pot_; }

 private:
  GridSpec grid_;
  double beta_;
  Eigen::VectorXd pot_;
};

// Dense direct-form Witten Hamiltonian (small grids only).
Eigen::MatrixXcd witten_dense_direct(const Potential& p, double beta,
                                     const GridSpec& g,
                                     std::int64_t dense_guard = 4096);

// Direct-form generalized Witten operator of RELD:
// H1(x) + H2(y) + mu sqrt(S)(I-W)sqrt(S), matrix-free.
class ReldDirect {
 public:
  ReldDirect(const Potential& p, const ReldParams& params,
             const GridSpec& base_grid);
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

 private:
  GridSpec base_grid_;
  ReldParams params_;
  Eigen::VectorXd pot_x_, pot_y_;  // base-grid potential terms
  Eigen::VectorXd sqrt_s_;
};

}  // namespace witten
