#include "witten/lindblad.hpp"

#include <cmath>
#include <stdexcept>

#include "witten/lapack.hpp"
#include "witten/parallel.hpp"

namespace witten {

double DensityState::min_eigenvalue() const {
  return eigh_values(matrix).minCoeff();
}

LindbladGenerator::LindbladGenerator(const FactorSet& fs, std::int64_t guard) {
  if (fs.field_size() > guard)
    throw std::runtime_error("LindbladGenerator: density-matrix guard");
  for (int j = 0; j < fs.num_factors(); ++j) l_.push_back(fs.dense(j));
  h_ = Eigen::MatrixXcd::Zero(fs.field_size(), fs.field_size());
  for (const auto& l : l_) h_ += l.adjoint() * l;
}

Eigen::MatrixXcd LindbladGenerator::rhs(const Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXcd out = -(h_ * rho) - rho * h_;
  for (const auto& l : l_) {
    const Eigen::MatrixXcd lr = l * rho;
    out += 2.0 * (lr * l.adjoint());
  }
  return 0.5 * (out + out.adjoint());  // Hermiticity drift control
}

LindbladRun rk4_evolve(const DensityState& rho0, const LindbladGenerator& gen,
                       double dt, double t_final,
                       const std::vector<TrajectoryObserver>& observers,
                       int observe_every) {
  if (dt <= 0.0) throw std::invalid_argument("rk4_evolve: dt must be > 0");
  LindbladRun run;
  DensityState state = rho0;
  const int steps = static_cast<int>(std::llround(t_final / dt));
  auto observe = [&](double t) {
    if (observers.empty()) return;
    TrajectorySample s;
    s.t = t;
    for (const auto& ob : observers) s.values.push_back(ob.eval(t, state));
    run.samples.push_back(std::move(s));
  };
  observe(0.0);
  for (int n = 0; n < steps; ++n) {
    const Eigen::MatrixXcd k1 = gen.rhs(state.matrix);
    const Eigen::MatrixXcd k2 = gen.rhs(state.matrix + 0.5 * dt * k1);
    const Eigen::MatrixXcd k3 = gen.rhs(state.matrix + 0.5 * dt * k2);
    const Eigen::MatrixXcd k4 = gen.rhs(state.matrix + dt * k3);
    state.matrix += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    state.matrix = 0.5 * (state.matrix + state.matrix.adjoint());
    if (std::abs(state.trace() - 1.0) > 1e-6)
      throw std::runtime_error(
          "rk4_evolve: trace drift exceeded 1e-6 at t=" +
          std::to_string((n + 1) * dt) + " (step size too large)");
    if ((n + 1) % observe_every == 0 || n + 1 == steps)
      observe((n + 1) * dt);
  }
  run.final_state = std::move(state);
  run.steps = steps;
  return run;
}

double overlap(const DensityState& rho, const WaveState& v) {
  if (rho.matrix.rows() != v.amplitudes.size())
    throw std::invalid_argument("overlap: dimension mismatch");
  const double q =
      (v.amplitudes.adjoint() * rho.matrix * v.amplitudes)(0, 0).real();
  return std::sqrt(std::max(0.0, q));
}

DensityState pure_density_from(const Eigen::VectorXd& density,
                               const GridSpec& g) {
  Eigen::VectorXcd psi(density.size());
  const double vol = g.cell_volume();
  for (Eigen::Index i = 0; i < density.size(); ++i)
    psi[i] = std::sqrt(std::max(0.0, density[i] * vol));
  DensityState out;
  out.matrix = psi * psi.adjoint();
  const double tr = out.matrix.trace().real();
  if (!(tr > 0.0))
    throw std::invalid_argument("pure_density_from: zero density");
  out.matrix /= tr;
  out.grid = g;
  return out;
}

FpRun fp_evolve(const Eigen::VectorXd& p0, const Potential& pot, double beta,
                const GridSpec& g, double dt, double t_final,
                const std::vector<std::function<double(
                    double, const Eigen::VectorXd&)>>& observers,
                int observe_every) {
  if (dt <= 0.0) throw std::invalid_argument("fp_evolve: dt must be > 0");
  if (p0.minCoeff() < -1e-12)
    throw std::invalid_argument("fp_evolve: density must be nonnegative");
  // Riemann-normalized sigma on the grid
  Eigen::VectorXd v = tabulate(pot, g);
  Eigen::VectorXd sig(v.size());
  const double vmin = v.minCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    sig[i] = std::exp(-beta * (v[i] - vmin));
  sig /= sig.sum() * g.cell_volume();
  Eigen::VectorXd sqs = sig.cwiseSqrt();

  Eigen::VectorXcd u(p0.size());
  for (Eigen::Index i = 0; i < p0.size(); ++i)
    u[i] = sqs[i] < 1e-150 ? 0.0 : p0[i] / sqs[i];  // division floor

  const FactorSet fs = FactorSet::langevin(pot, beta, g);
  auto rhs = [&](const Eigen::VectorXcd& w) -> Eigen::VectorXcd {
    return -fs.witten_apply(w);
  };
  FpRun run;
  auto density_of = [&](const Eigen::VectorXcd& w) {
    return Eigen::VectorXd((sqs.array() * w.real().array()).matrix());
  };
  auto observe = [&](double t) {
    if (observers.empty()) return;
    TrajectorySample s;
    s.t = t;
    const Eigen::VectorXd p = density_of(u);
    for (const auto& ob : observers) s.values.push_back(ob(t, p));
    run.samples.push_back(std::move(s));
  };
  observe(0.0);
  const int steps = static_cast<int>(std::llround(t_final / dt));
  for (int n = 0; n < steps; ++n) {
    const Eigen::VectorXcd k1 = rhs(u);
    const Eigen::VectorXcd k2 = rhs(u + 0.5 * dt * k1);
    const Eigen::VectorXcd k3 = rhs(u + 0.5 * dt * k2);
    const Eigen::VectorXcd k4 = rhs(u + dt * k3);
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((n + 1) % observe_every == 0 || n + 1 == steps) observe((n + 1) * dt);
  }
  run.final_density = density_of(u);
  return run;
}

double weak_convergence_check(const FactorSet& fs, const Potential& pot,
                              double beta, const GridSpec& g,
                              const Eigen::VectorXd& w,
                              const Eigen::VectorXd& p0, double dt,
                              double t_final, int check_every) {
  LindbladGenerator gen(fs);
  DensityState rho = pure_density_from(p0, g);
  const double vol = g.cell_volume();

  std::vector<double> lhs;  // Tr[w rho] at checkpoints
  std::vector<TrajectoryObserver> obs{
      {"w", [&](double, const DensityState& r) {
         double s = 0.0;
         for (Eigen::Index i = 0; i < w.size(); ++i)
           s += w[i] * r.matrix(i, i).real();
         return s;
       }}};
  LindbladRun lrun = rk4_evolve(rho, gen, dt, t_final, obs, check_every);

  std::vector<std::function<double(double, const Eigen::VectorXd&)>> fobs{
      [&](double, const Eigen::VectorXd& p) {
        return (w.array() * p.array()).sum() * vol;
      }};
  FpRun frun = fp_evolve(p0, pot, beta, g, dt, t_final, fobs, check_every);

  if (lrun.samples.size() != frun.samples.size())
    throw std::runtime_error("weak_convergence_check: checkpoint mismatch");
  double disc = 0.0;
  for (size_t i = 0; i < lrun.samples.size(); ++i)
    disc = std::max(disc, std::abs(lrun.samples[i].values[0] -
                                   frun.samples[i].values[0]));
  return disc;
}

}  // namespace witten
