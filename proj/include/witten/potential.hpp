#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace witten {

// A smooth scalar field on R^d with analytic gradient. Immutable after
// construction and safe to share across threads. The optional laplacian is
// used by the direct-form Witten operator; when absent the operator falls
// back to spectral differentiation of the tabulated gradient.
struct Potential {
  std::string name;
  int dim = 1;
  std::optional<double> cap;  // cap-above value, if the landscape was clipped

  std::function<double(const Eigen::VectorXd&)> eval_fn;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad_fn;
  std::function<double(const Eigen::VectorXd&)> laplacian_fn;  // may be empty

  double eval(const Eigen::VectorXd& x) const { return eval_fn(x); }
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const { return grad_fn(x); }
  bool has_laplacian() const { return static_cast<bool>(laplacian_fn); }
  double laplacian(const Eigen::VectorXd& x) const { return laplacian_fn(x); }
};

Potential muller_brown();
Potential quartic_cosine_1d();
Potential harmonic(double gamma, int d);

// min(p.eval, c) with zero gradient (and laplacian) wherever p.eval >= c.
Potential cap_above(const Potential& p, double c);

// Named-potential registry, addressable from CLI configs.
// Keys: "muller-brown" (params: cap), "quartic-cosine-1d", "harmonic"
// (params: gamma, d).
Potential make_potential(const std::string& key, double gamma = 1.0, int d = 1,
                         std::optional<double> cap = std::nullopt);

}  // namespace witten
