#include "witten/potential.hpp"

#include <array>
#include <cmath>

namespace witten {

Potential muller_brown() {
  // Four-Gaussian sum; constants from the standard parameterization.
  static constexpr std::array<double, 4> A{-200.0, -100.0, -170.0, 15.0};
  static constexpr std::array<double, 4> a{-1.0, -1.0, -6.5, 0.7};
  static constexpr std::array<double, 4> b{0.0, 0.0, 11.0, 0.6};
  static constexpr std::array<double, 4> c{-10.0, -10.0, -6.5, 0.7};
  static constexpr std::array<double, 4> x0{1.0, 0.0, -0.5, -1.0};
  static constexpr std::array<double, 4> y0{0.0, 0.5, 1.5, 1.0};

  Potential p;
  p.name = "muller-brown";
  p.dim = 2;
  p.eval_fn = [](const Eigen::VectorXd& z) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double dx = z[0] - x0[k], dy = z[1] - y0[k];
      s += A[k] * std::exp(a[k] * dx * dx + b[k] * dx * dy + c[k] * dy * dy);
    }
    return s;
  };
  p.grad_fn = [](const Eigen::VectorXd& z) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(2);
    for (int k = 0; k < 4; ++k) {
      const double dx = z[0] - x0[k], dy = z[1] - y0[k];
      const double e =
          A[k] * std::exp(a[k] * dx * dx + b[k] * dx * dy + c[k] * dy * dy);
      g[0] += e * (2.0 * a[k] * dx + b[k] * dy);
      g[1] += e * (b[k] * dx + 2.0 * c[k] * dy);
    }
    return g;
  };
  p.laplacian_fn = [](const Eigen::VectorXd& z) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double dx = z[0] - x0[k], dy = z[1] - y0[k];
      const double e =
          A[k] * std::exp(a[k] * dx * dx + b[k] * dx * dy + c[k] * dy * dy);
      const double px = 2.0 * a[k] * dx + b[k] * dy;
      const double py = b[k] * dx + 2.0 * c[k] * dy;
      s += e * (px * px + 2.0 * a[k] + py * py + 2.0 * c[k]);
    }
    return s;
  };
  return p;
}

Potential quartic_cosine_1d() {
  Potential p;
  p.name = "quartic-cosine-1d";
  p.dim = 1;
  p.eval_fn = [](const Eigen::VectorXd& z) {
    const double cx = std::cos(M_PI * z[0]);
    return cx * cx + 0.25 * z[0] * z[0] * z[0] * z[0];
  };
  p.grad_fn = [](const Eigen::VectorXd& z) {
    Eigen::VectorXd g(1);
    g[0] = -2.0 * M_PI * std::cos(M_PI * z[0]) * std::sin(M_PI * z[0]) +
           z[0] * z[0] * z[0];
    return g;
  };
  p.laplacian_fn = [](const Eigen::VectorXd& z) {
    return -2.0 * M_PI * M_PI * std::cos(2.0 * M_PI * z[0]) + 3.0 * z[0] * z[0];
  };
  return p;
}

Potential harmonic(double gamma, int d) {
  if (gamma <= 0.0) throw std::invalid_argument("harmonic: gamma must be > 0");
  Potential p;
  p.name = "harmonic";
  p.dim = d;
  p.eval_fn = [gamma](const Eigen::VectorXd& z) {
    return 0.5 * gamma * z.squaredNorm();
  };
  p.grad_fn = [gamma](const Eigen::VectorXd& z) -> Eigen::VectorXd {
    return gamma * z;
  };
  p.laplacian_fn = [gamma, d](const Eigen::VectorXd&) { return gamma * d; };
  return p;
}

Potential cap_above(const Potential& p, double c) {
  Potential q;
  q.name = p.name + "+cap";
  q.dim = p.dim;
  q.cap = c;
  auto ev = p.eval_fn;
  auto gr = p.grad_fn;
  auto la = p.laplacian_fn;
  q.eval_fn = [ev, c](const Eigen::VectorXd& z) {
    return std::min(ev(z), c);
  };
  q.grad_fn = [ev, gr, c](const Eigen::VectorXd& z) -> Eigen::VectorXd {
    if (ev(z) >= c) return Eigen::VectorXd::Zero(z.size());
    return gr(z);
  };
  if (la) {
    q.laplacian_fn = [ev, la, c](const Eigen::VectorXd& z) {
      return ev(z) >= c ? 0.0 : la(z);
    };
  }
  return q;
}

Potential make_potential(const std::string& key, double gamma, int d,
                         std::optional<double> cap) {
  Potential p;
  if (key == "muller-brown") {
    p = muller_brown();
  } else if (key == "quartic-cosine-1d") {
    p = quartic_cosine_1d();
  } else if (key == "harmonic") {
    p = harmonic(gamma, d);
  } else {
    throw std::invalid_argument("unknown potential key: " + key);
  }
  if (cap) p = cap_above(p, *cap);
  return p;
}

}  // namespace witten
