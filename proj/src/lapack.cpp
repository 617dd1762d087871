#include "witten/lapack.hpp"

#include <complex>
#include <stdexcept>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace witten {

Eigen::VectorXd eigh_values(const Eigen::MatrixXcd& h) {
  Eigen::MatrixXcd a = h;
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n,
                                         a.data(), n, w.data());
  if (info != 0) throw std::runtime_error("zheevd failed");
  return w;
}

void eigh(const Eigen::MatrixXcd& h, Eigen::VectorXd& values,
          Eigen::MatrixXcd& vectors) {
  vectors = h;
  const lapack_int n = static_cast<lapack_int>(vectors.rows());
  values.resize(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         vectors.data(), n, values.data());
  if (info != 0) throw std::runtime_error("zheevd failed");
}

void svd_right(const Eigen::MatrixXcd& a, Eigen::VectorXd& s,
               Eigen::MatrixXcd& v) {
  Eigen::MatrixXcd work = a;
  const lapack_int m = static_cast<lapack_int>(work.rows());
  const lapack_int n = static_cast<lapack_int>(work.cols());
  const lapack_int k = std::min(m, n);
  s.resize(k);
  Eigen::MatrixXcd u(m, k), vt(k, n);
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, s.data(),
                     u.data(), m, vt.data(), k);
  if (info != 0) throw std::runtime_error("zgesdd failed");
  v = vt.adjoint();
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXcd work = a;
  const lapack_int m = static_cast<lapack_int>(work.rows());
  const lapack_int n = static_cast<lapack_int>(work.cols());
  Eigen::VectorXd s(std::min(m, n));
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n,
                                         work.data(), m, s.data(), nullptr, m,
                                         nullptr, n);
  if (info != 0) throw std::runtime_error("zgesdd failed");
  return s;
}

}  // namespace witten
