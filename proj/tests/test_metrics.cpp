#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "witten/metrics.hpp"
#include "witten/rng.hpp"

using namespace witten;

TEST_CASE("boost_resolution") {
  const GridSpec g = build_grid(1, 64, 4.0);
  const Potential p = harmonic(1.0, 1);
  const WaveState w = gibbs_state(p, 2.0, g);

  SUBCASE("r = log2(N) is the identity") {
    const FineState f = boost_resolution(w, 6);
    CHECK((f.amplitudes - w.amplitudes).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("norm preserved") {
    const FineState f = boost_resolution(w, 9);
    CHECK(f.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("single Fourier mode maps to the same mode, exactly") {
    Eigen::VectorXcd amp(g.n);
    for (int k = 0; k < g.n; ++k)
      amp[k] = std::exp(std::complex<double>(0, 3.0 * M_PI * g.point(k) / 4.0));
    WaveState mode{amp / amp.norm(), g};
    const FineState f = boost_resolution(mode, 8);
    const GridSpec fine = f.grid;
    for (int k = 0; k < fine.n; k += 7) {
      const std::complex<double> expect =
          std::exp(std::complex<double>(0, 3.0 * M_PI * fine.point(k) / 4.0)) /
          std::sqrt(double(fine.n));
      CHECK(std::abs(f.amplitudes[k] - expect) <= 1e-12);
    }
  }
  SUBCASE("downsampling at original nodes recovers the input") {
    const FineState f = boost_resolution(w, 9);  // M = 512 = 8 N
    const int stride = 512 / g.n;
    Eigen::VectorXcd down(g.n);
    for (int k = 0; k < g.n; ++k) down[k] = f.amplitudes[k * stride];
    down /= down.norm();
    CHECK((down - w.amplitudes).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("real inputs stay real") {
    const FineState f = boost_resolution(w, 9);
    CHECK(f.amplitudes.imag().cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("guards") {
    CHECK_THROWS(boost_resolution(w, 5));       // 2^r < N
    CHECK_THROWS(boost_resolution(w, 21));      // fine guard
  }
}

TEST_CASE("measure_and_jitter") {
  const GridSpec g = build_grid(1, 64, 4.0);
  SUBCASE("delta state keeps samples in one cell") {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(g.n);
    amp[10] = 1.0;
    const FineState f{amp, g};
    const SampleBatch sb = measure_and_jitter(f, 500, 9);
    for (Eigen::Index i = 0; i < sb.samples.rows(); ++i)
      CHECK(std::abs(sb.samples(i, 0) - g.point(10)) <= g.spacing() / 2);
  }
  SUBCASE("uniform state: cell frequencies within 4-sigma multinomial") {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Constant(g.n, 1.0);
    FineState f{amp / amp.norm(), g};
    const std::int64_t n = 100000;
    const SampleBatch sb = measure_and_jitter(f, n, 10);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(g.n);
    for (Eigen::Index i = 0; i < sb.samples.rows(); ++i) {
      const int k =
          int(std::floor((sb.samples(i, 0) + 4.0) / g.spacing() + 0.5));
      counts[std::clamp(k, 0, g.n - 1)] += 1.0;
    }
    const double mean = double(n) / g.n;
    const double sd = std::sqrt(mean * (1.0 - 1.0 / g.n));
    for (int k = 0; k < g.n; ++k)
      CHECK(std::abs(counts[k] - mean) <= 4.0 * sd);
  }
  SUBCASE("deterministic per seed") {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Constant(g.n, 1.0);
    FineState f{amp / amp.norm(), g};
    const SampleBatch a = measure_and_jitter(f, 1000, 3);
    const SampleBatch b = measure_and_jitter(f, 1000, 3);
    CHECK((a.samples - b.samples).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("tv_distance") {
  Eigen::VectorXd p(4), q(4);
  p << 1.0, 1.0, 0.0, 0.0;
  q << 0.0, 0.0, 1.0, 1.0;
  SUBCASE("identical densities") { CHECK(tv_distance(p, p, 0.5) == 0.0); }
  SUBCASE("disjoint supports give 1") { CHECK(tv_distance(p, q, 0.5) == 1.0); }
  SUBCASE("grid mismatch") {
    CHECK_THROWS(tv_distance(p, Eigen::VectorXd::Zero(3), 0.5));
  }
  SUBCASE("symmetry and triangle inequality on random densities") {
    auto rng = make_stream(1, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 25; ++t) {
      Eigen::VectorXd a(8), b(8), c(8);
      for (int i = 0; i < 8; ++i) {
        a[i] = unif(rng);
        b[i] = unif(rng);
        c[i] = unif(rng);
      }
      a /= a.sum() * 0.25;
      b /= b.sum() * 0.25;
      c /= c.sum() * 0.25;
      CHECK(tv_distance(a, b, 0.25) == doctest::Approx(tv_distance(b, a, 0.25)));
      CHECK(tv_distance(a, c, 0.25) <=
            tv_distance(a, b, 0.25) + tv_distance(b, c, 0.25) + 1e-12);
      CHECK(tv_distance(a, b, 0.25) <= 1.0 + 1e-12);
    }
  }
  SUBCASE("piecewise-constant refinement error decays like 1/M") {
    // TV between exp(-2V) sampled at M cells vs 4M cells, as a Riemann proxy
    const Potential q1 = quartic_cosine_1d();
    double prev = 1.0;
    for (int m : {64, 128, 256, 512}) {
      const GridSpec gm = build_grid(1, m, 3.0);
      const GridSpec gf = build_grid(1, 4 * m, 3.0);
      const Eigen::VectorXd coarse = exact_density(q1, 2.0, gm);
      const Eigen::VectorXd fine = exact_density(q1, 2.0, gf);
      Eigen::VectorXd up(4 * m);
      for (int k = 0; k < 4 * m; ++k) up[k] = coarse[k / 4];
      const double tv = tv_distance(up, fine, gf.cell_volume());
      CHECK(tv <= 0.65 * prev);  // ~ halves per doubling
      prev = tv;
    }
  }
}

TEST_CASE("chi2_divergence") {
  const GridSpec g = build_grid(1, 32, 4.0);
  const Eigen::VectorXd sigma = exact_density(harmonic(1.0, 1), 1.0, g);
  SUBCASE("chi2(sigma, sigma) = 0") {
    CHECK(chi2_divergence(sigma, sigma, g.cell_volume()) == 0.0);
  }
  SUBCASE("chi2 >= (2 TV)^2 on random densities") {
    auto rng = make_stream(2, 0);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    for (int t = 0; t < 25; ++t) {
      Eigen::VectorXd p(g.size());
      for (std::int64_t i = 0; i < g.size(); ++i) p[i] = unif(rng);
      p /= p.sum() * g.cell_volume();
      const double tv = tv_distance(p, sigma, g.cell_volume());
      CHECK(chi2_divergence(p, sigma, g.cell_volume()) >= 4.0 * tv * tv - 1e-12);
    }
  }
}

TEST_CASE("state_overlap") {
  const GridSpec g = build_grid(1, 32, 4.0);
  const WaveState u = gibbs_state(harmonic(1.0, 1), 1.0, g);
  CHECK(state_overlap(u, u) == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::VectorXcd w(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i)
    w[i] = g.point_at(i)[0] * u.amplitudes[i];
  w -= u.amplitudes * u.amplitudes.dot(w);
  WaveState v{w / w.norm(), g};
  CHECK(state_overlap(u, v) <= 1e-12);
  WaveState bad{Eigen::VectorXcd::Zero(8), build_grid(1, 8, 4.0)};
  CHECK_THROWS(state_overlap(u, bad));
}
