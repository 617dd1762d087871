#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "witten/operators.hpp"

namespace witten {

// Hermitian, PSD, trace-1 matrix over the grid.
struct DensityState {
  Eigen::MatrixXcd matrix;
  GridSpec grid;

  double trace() const { return matrix.trace().real(); }
  double hermiticity_error() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }
  double min_eigenvalue() const;  // checked on demand
};

inline constexpr std::int64_t kDensityGuard = 4096;

// Dense jump operators and H = sum L_j^dagger L_j, materialized once.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const FactorSet& fs,
                             std::int64_t guard = kDensityGuard);

  // sum_j (2 L_j rho L_j^dagger - {L_j^dagger L_j, rho}), output symmetrized.
  Eigen::MatrixXcd rhs(const Eigen::MatrixXcd& rho) const;
  const Eigen::MatrixXcd& hamiltonian() const { return h_; }
  const std::vector<Eigen::MatrixXcd>& jumps() const { return l_; }

 private:
  std::vector<Eigen::MatrixXcd> l_;
  Eigen::MatrixXcd h_;
};

struct TrajectoryObserver {
  std::string name;
  std::function<double(double t, const DensityState&)> eval;
};

struct TrajectorySample {
  double t = 0.0;
  std::vector<double> values;  // one per observer
};

struct LindbladRun {
  DensityState final_state;
  std::vector<TrajectorySample> samples;
  int steps = 0;
};

// Classic RK4 with per-step symmetrization; aborts when |tr(rho)-1| drifts
// beyond 1e-6 (step size too large).
LindbladRun rk4_evolve(const DensityState& rho0, const LindbladGenerator& gen,
                       double dt, double t_final,
                       const std::vector<TrajectoryObserver>& observers = {},
                       int observe_every = 100);

// sqrt(Tr[|v><v| rho]) clamped at 0.
double overlap(const DensityState& rho, const WaveState& v);

// Lift of a grid density to the rank-one density matrix |sqrt(p h^d)><...|;
// its diagonal reproduces the cell probabilities p*h^d.
DensityState pure_density_from(const Eigen::VectorXd& density,
                               const GridSpec& g);

struct FpRun {
  Eigen::VectorXd final_density;
  std::vector<TrajectorySample> samples;  // observer values over time
};

// Fokker-Planck evolution in the u = p/sqrt(sigma) frame: du/dt = -H u via
// RK4 with the factored witten_apply; returns p(t) = sqrt(sigma) u(t).
FpRun fp_evolve(const Eigen::VectorXd& p0, const Potential& pot, double beta,
                const GridSpec& g, double dt, double t_final,
                const std::vector<std::function<double(
                    double, const Eigen::VectorXd&)>>& observers = {},
                int observe_every = 100);

// Evolves both the Lindblad state (pure lift of p0) and the Fokker-Planck
// density from matched initial data and returns
// max over checkpoints of |Tr[w rho(t)] - sum w p(t) h^d|.
double weak_convergence_check(const FactorSet& fs, const Potential& pot,
                              double beta, const GridSpec& g,
                              const Eigen::VectorXd& w,
                              const Eigen::VectorXd& p0, double dt,
                              double t_final, int check_every = 50);

}  // namespace witten
