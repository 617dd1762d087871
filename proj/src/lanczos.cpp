#include "witten/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <random>

#include "witten/rng.hpp"

namespace witten {

LanczosResult lanczos_smallest(const HermitianApply& apply, std::int64_t n,
                               const std::vector<Eigen::VectorXcd>& deflation,
                               const LanczosOptions& opts) {
  std::vector<Eigen::VectorXcd> defl;
  for (const auto& d : deflation) defl.push_back(d.normalized());
  auto project = [&](Eigen::VectorXcd v) {
    for (const auto& d : defl) v -= d * d.dot(v);
    return v;
  };
  auto op = [&](const Eigen::VectorXcd& v) { return project(apply(project(v))); };

  const int m = opts.basis;
  Eigen::MatrixXcd V(n, m + 1);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, m + 1);

  auto rng = make_stream(opts.seed, 0);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v0(n);
  for (std::int64_t i = 0; i < n; ++i) v0[i] = gauss(rng);
  v0 = project(v0);
  v0.normalize();
  V.col(0) = v0;

  LanczosResult out;
  int k = 0;  // restart block size currently occupying the front of V
  Eigen::VectorXd ritz;
  Eigen::MatrixXd Q;
  while (out.applies < opts.max_applies) {
    int j = k;
    while (j < m && out.applies < opts.max_applies) {
      Eigen::VectorXcd w = op(V.col(j));
      ++out.applies;
      // full reorthogonalization (twice) against the active basis
      Eigen::VectorXcd h = V.leftCols(j + 1).adjoint() * w;
      w -= V.leftCols(j + 1) * h;
      Eigen::VectorXcd h2 = V.leftCols(j + 1).adjoint() * w;
      w -= V.leftCols(j + 1) * h2;
      h += h2;
      for (int i = 0; i <= j; ++i) {
        T(i, j) = h[i].real();
        T(j, i) = h[i].real();
      }
      const double b = w.norm();
      if (b < 1e-14) {  // invariant subspace found
        j++;
        break;
      }
      T(j + 1, j) = T(j, j + 1) = b;
      V.col(j + 1) = w / b;
      ++j;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T.topLeftCorner(j, j));
    ritz = es.eigenvalues();
    Q = es.eigenvectors();

    Eigen::VectorXcd y = V.leftCols(j) * Q.col(0).cast<std::complex<double>>();
    Eigen::VectorXcd r = op(y) - ritz[0] * y;
    ++out.applies;
    out.residual = r.norm();
    const int nv = std::min<int>(opts.num_values, j);
    out.values.assign(ritz.data(), ritz.data() + nv);
    if (out.residual <= opts.tol * std::max(1.0, std::abs(ritz[0]))) {
      out.converged = true;
      return out;
    }
    // thick restart: keep the lowest Ritz vectors plus the residual direction
    const int kk = std::min(opts.keep, j - 1);
    Eigen::MatrixXcd Y =
        V.leftCols(j) * Q.leftCols(kk).cast<std::complex<double>>();
    Eigen::VectorXd bv = T(j, j - 1) * Q.row(j - 1).head(kk).transpose();
    Eigen::VectorXcd f = V.col(j);
    V.leftCols(kk) = Y;
    V.col(kk) = f;
    T.setZero();
    for (int i = 0; i < kk; ++i) {
      T(i, i) = ritz[i];
      T(kk, i) = T(i, kk) = bv[i];
    }
    k = kk;
  }
  return out;  // not converged; caller inspects residual
}

}  // namespace witten
