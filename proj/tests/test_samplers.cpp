#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "witten/metrics.hpp"
#include "witten/samplers.hpp"

using namespace witten;

namespace {
const Eigen::VectorXd kZero1 = Eigen::VectorXd::Zero(1);
}

TEST_CASE("ula_chain") {
  const Potential p = harmonic(1.0, 1);
  SUBCASE("deterministic given the seed") {
    const SampleBatch a = ula_chain(p, 1.0, 1e-2, 5000, kZero1, 42);
    const SampleBatch b = ula_chain(p, 1.0, 1e-2, 5000, kZero1, 42);
    CHECK((a.samples - b.samples).cwiseAbs().maxCoeff() == 0.0);
    const SampleBatch c = ula_chain(p, 1.0, 1e-2, 5000, kZero1, 43);
    CHECK((a.samples - c.samples).cwiseAbs().maxCoeff() > 0.0);
  }
  SUBCASE("free diffusion has per-step variance 2 dt") {
    const Potential zero{
        "zero", 1, {}, [](const Eigen::VectorXd&) { return 0.0; },
        [](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(1); }, {}};
    const double dt = 1e-2;
    const SampleBatch sb = ula_chain(zero, 1.0, dt, 20000, kZero1, 7, 0);
    Eigen::VectorXd inc(sb.samples.rows() - 1);
    for (Eigen::Index i = 0; i + 1 < sb.samples.rows(); ++i)
      inc[i] = sb.samples(i + 1, 0) - sb.samples(i, 0);
    const double var = inc.squaredNorm() / inc.size();
    CHECK(var == doctest::Approx(2.0 * dt).epsilon(0.05));
  }
  SUBCASE("stationary variance of the discretized OU chain") {
    // EM bias factor 1/(1 - gamma dt/2); 5% window covers it at dt = 2e-2
    const SampleBatch sb = ula_chain(p, 1.0, 2e-2, 100000, kZero1, 11);
    const double mean = sb.samples.col(0).mean();
    const double var =
        (sb.samples.col(0).array() - mean).square().sum() / sb.samples.rows();
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("divergence guard") {
    // an inverted potential blows up deterministically
    const Potential inv{
        "inv", 1, {}, [](const Eigen::VectorXd& x) { return -x.squaredNorm(); },
        [](const Eigen::VectorXd& x) { return Eigen::VectorXd(-2.0 * x); },
        {}};
    CHECK_THROWS(ula_chain(inv, 1.0, 0.5, 200,
                           Eigen::VectorXd::Constant(1, 1.0), 1));
  }
  SUBCASE("burn-in defaults to 10%") {
    const SampleBatch sb = ula_chain(p, 1.0, 1e-2, 1000, kZero1, 3);
    CHECK(sb.samples.rows() == 900);
    CHECK(sb.params.burn_in == 100);
  }
}

TEST_CASE("mala_chain") {
  const Potential p = harmonic(1.0, 1);
  SUBCASE("acceptance approaches 1 as dt -> 0") {
    const SampleBatch sb = mala_chain(p, 1.0, 1e-6, 20000, kZero1, 5);
    CHECK(sb.acceptance_rate >= 0.999);
  }
  SUBCASE("acceptance rate is reported and in (0,1]") {
    const SampleBatch sb = mala_chain(p, 1.0, 0.5, 5000, kZero1, 6);
    CHECK(sb.acceptance_rate > 0.0);
    CHECK(sb.acceptance_rate <= 1.0);
    CHECK(sb.acceptance_rate < 0.99);  // coarse steps do get rejected
  }
  SUBCASE("detailed balance smoke test: harmonic moments") {
    const SampleBatch sb = mala_chain(p, 1.0, 1e-2, 200000, kZero1, 12);
    const double mean = sb.samples.col(0).mean();
    const double var =
        (sb.samples.col(0).array() - mean).square().sum() / sb.samples.rows();
    // 3 standard errors with autocorrelation time ~ 2/dt steps
    const double se_mean = std::sqrt(2.0 / (1e-2 * sb.samples.rows()));
    CHECK(std::abs(mean) <= 3.0 * se_mean);
    CHECK(std::abs(var - 1.0) <= 3.0 * se_mean * std::sqrt(2.0));
  }
  SUBCASE("1D quartic-cosine: histogram TV to the exact Gibbs law") {
    const Potential q = quartic_cosine_1d();
    const SampleBatch sb =
        mala_chain(q, 2.0, 1e-3, 1000000, kZero1, 2024);
    const HistogramDensity h = histogram(sb, 50, -3.0, 3.0);
    const GridSpec bins = build_grid(1, 50, 3.0);
    // exact density at bin centers
    Eigen::VectorXd exact(50);
    for (int k = 0; k < 50; ++k) {
      Eigen::VectorXd pt = Eigen::VectorXd::Constant(1, h.center(k));
      exact[k] = std::exp(-2.0 * q.eval(pt));
    }
    exact /= exact.sum() * h.bin_width();
    CHECK(tv_distance(h.density, exact, h.bin_width()) <= 0.05);
  }
}

TEST_CASE("reld_sde") {
  const Potential q = quartic_cosine_1d();
  SUBCASE("mu=0 x-replica is bit-identical to a ULA chain") {
    ReldParams rp{4.0, 1.0, 0.0};
    const SampleBatch joint =
        reld_sde(q, rp, 1e-3, 20000, kZero1, kZero1, 99, 0);
    const SampleBatch single = ula_chain(q, 4.0, 1e-3, 20000, kZero1, 99, 0);
    CHECK((joint.samples.col(0) - single.samples.col(0))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
  SUBCASE("beta = beta' accepts every swap event") {
    // beta' approaches beta: swap probability is exp(0)=1 identically
    ReldParams rp{2.0, 2.0 * (1.0 - 1e-12), 5.0};
    const SampleBatch sb = reld_sde(q, rp, 1e-3, 20000, kZero1, kZero1, 17);
    CHECK(sb.acceptance_rate == doctest::Approx(1.0));
  }
  SUBCASE("swaps let the cold replica visit all four wells") {
    // plain ULA at beta=10 stays in one well from this start; RELD does not
    const double dt = 1e-3;
    const std::int64_t n = 1000000;
    const Eigen::VectorXd start = Eigen::VectorXd::Constant(1, -0.5);
    auto wells_visited = [](const Eigen::VectorXd& xs) {
      // wells near -1.35, -0.49, +0.49, +1.35: quadrant occupancy
      bool w[4] = {false, false, false, false};
      for (Eigen::Index i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        if (x < -1.0)
          w[0] = true;
        else if (x < 0.0)
          w[1] = true;
        else if (x < 1.0)
          w[2] = true;
        else
          w[3] = true;
      }
      return int(w[0]) + int(w[1]) + int(w[2]) + int(w[3]);
    };
    const SampleBatch ula = ula_chain(q, 10.0, dt, n, start, 31, 0);
    CHECK(wells_visited(ula.samples.col(0)) == 1);
    ReldParams rp{10.0, 1.0, 1.0};
    const SampleBatch re = reld_sde(q, rp, dt, n, start, start, 31, 0);
    CHECK(wells_visited(re.samples.col(0)) == 4);
  }
}

TEST_CASE("histogram") {
  SampleBatch sb;
  sb.samples = Eigen::MatrixXd(4, 1);
  sb.samples << 0.1, 0.1, 0.1, 0.1;
  SUBCASE("all samples in one bin") {
    const HistogramDensity h = histogram(sb, 10, 0.0, 1.0);
    CHECK(h.density[1] == doctest::Approx(10.0));  // 1/bin_width
    CHECK(h.density.sum() * h.bin_width() == doctest::Approx(1.0));
  }
  SUBCASE("right-open bins") {
    sb.samples << 0.0, 0.1, 0.1 - 1e-12, 0.999;
    const HistogramDensity h = histogram(sb, 10, 0.0, 1.0);
    CHECK(h.density[0] == doctest::Approx(5.0));   // 0.0 and 0.1-eps
    CHECK(h.density[1] == doctest::Approx(2.5));   // 0.1 lands rightward
    CHECK(h.density[9] == doctest::Approx(2.5));
  }
  SUBCASE("uniform samples are flat within multinomial noise") {
    SampleBatch u;
    u.samples.resize(100000, 1);
    auto rng = std::mt19937_64(4);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (Eigen::Index i = 0; i < u.samples.rows(); ++i)
      u.samples(i, 0) = unif(rng);
    const HistogramDensity h = histogram(u, 20, -1.0, 1.0);
    // each bin ~ N(5000, sqrt(4750)): 4 sigma
    for (int k = 0; k < 20; ++k)
      CHECK(std::abs(h.density[k] - 0.5) <= 4.0 * 0.5 / std::sqrt(5000.0));
  }
  CHECK_THROWS(histogram(sb, 1, 0.0, 1.0));
}

TEST_CASE("empirical_overlap") {
  const Potential q = quartic_cosine_1d();
  const double beta = 2.0;
  SUBCASE("exact bin-grid Gibbs gives overlap 1") {
    HistogramDensity h;
    h.bins = 50;
    h.dim = 1;
    h.lo = -3.0;
    h.hi = 3.0;
    h.density.resize(50);
    for (int k = 0; k < 50; ++k) {
      Eigen::VectorXd pt = Eigen::VectorXd::Constant(1, h.center(k));
      h.density[k] = std::exp(-beta * q.eval(pt));
    }
    h.density /= h.density.sum() * h.bin_width();
    CHECK(empirical_overlap(h, q, beta) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("disjoint support gives ~0") {
    HistogramDensity h;
    h.bins = 50;
    h.dim = 1;
    h.lo = -3.0;
    h.hi = 3.0;
    h.density = Eigen::VectorXd::Zero(50);
    h.density[0] = 1.0 / h.bin_width();  // mass at x ~ -3, V huge
    CHECK(empirical_overlap(h, q, 20.0) <= 1e-6);
  }
}
