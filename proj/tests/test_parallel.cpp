#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "witten/fft.hpp"
#include "witten/operators.hpp"
#include "witten/parallel.hpp"
#include "witten/rng.hpp"

using namespace witten;

namespace {
Eigen::VectorXcd random_field(std::int64_t n, std::uint64_t seed) {
  auto rng = make_stream(seed, 0);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(n);
  for (std::int64_t i = 0; i < n; ++i) v[i] = {gauss(rng), gauss(rng)};
  return v;
}
}  // namespace

TEST_CASE("OpenMP fft kernels match the serial reference bit-for-bit") {
  const int n = 150;
  Eigen::VectorXcd mult(n);
  for (int k = 0; k < n; ++k)
    mult[k] = std::complex<double>(0.1 * k, k < n / 2 ? k : k - n);

  for (int axis : {0, 1}) {
    Eigen::VectorXcd a = random_field(std::int64_t(n) * n, 17 + axis);
    Eigen::VectorXcd b = a;
    apply_axis_multiplier(a, 2, n, axis, mult);
    ref::apply_axis_multiplier(b, 2, n, axis, mult);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXcd c = random_field(std::int64_t(n) * n, 23 + axis);
    Eigen::VectorXcd d = c;
    fft_axis(c, 2, n, axis, true);
    ref::fft_axis(d, 2, n, axis, true);
    CHECK((c - d).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("results are independent of the thread cap") {
  const GridSpec g = build_grid(1, 96, 3.0);
  const Potential q = quartic_cosine_1d();
  ReldParams rp{4.0, 1.0, 1.0};
  const FactorSet fs = FactorSet::reld(q, rp, g);
  const Eigen::VectorXcd v = random_field(fs.field_size(), 5);

  set_max_threads(1);
  const Eigen::VectorXcd r1 = fs.witten_apply(v);
  set_max_threads(2);
  const Eigen::VectorXcd r2 = fs.witten_apply(v);
  set_max_threads(0);
  const Eigen::VectorXcd r0 = fs.witten_apply(v);
  CHECK((r1 - r2).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r1 - r0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unitary round trip") {
  const int n = 150;
  Eigen::VectorXcd a = random_field(n, 3);
  Eigen::VectorXcd b = a;
  fft_axis(a, 1, n, 0, true);
  CHECK(std::abs(a.norm() - b.norm()) <= 1e-12);  // unitary normalization
  fft_axis(a, 1, n, 0, false);
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
}
