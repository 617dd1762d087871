#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "witten/metrics.hpp"
#include "witten/rng.hpp"
#include "witten/svt.hpp"

using namespace witten;

namespace {
WaveState gaussian_state(const GridSpec& g, double center, double std) {
  Eigen::VectorXcd amp(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    double q = 0.0;
    const Eigen::VectorXd x = g.point_at(i);
    for (int ax = 0; ax < g.dim; ++ax) q += (x[ax] - center) * (x[ax] - center);
    amp[i] = std::exp(-0.25 * q / (std * std));
  }
  WaveState w{std::move(amp), g};
  w.normalize();
  return w;
}

FilterSpec default_filter(const BlockOperator& b, double singular_gap,
                          int degree = 0) {
  const double ghat = singular_gap / b.alpha();
  const double s1 = ghat / 4.0, s2 = 3.0 * ghat / 4.0;
  if (degree == 0) degree = degree_for(s2 - s1, 1e-3);
  return design_filter(s1, s2, (s2 - s1) / 4.0, degree);
}
}  // namespace

TEST_CASE("threshold_svd fixes the exact kernel state") {
  const GridSpec g = build_grid(1, 32, 8.0);
  const Potential p = harmonic(1.0, 1);
  const BlockOperator b(FactorSet::langevin(p, 1.0, g));
  const WaveState gibbs = gibbs_state(p, 1.0, g);
  const FilterSpec fs = default_filter(b, 1.0);

  const SvtResult r = threshold_svd(b, fs, gibbs);
  CHECK(state_overlap(r.state, gibbs) >= 1.0 - 1e-3);
  CHECK(r.success_probability >= 1.0 - 5e-3);
  CHECK(r.success_probability <= 1.0 + 1e-10);
  CHECK(r.residual <= fs.s2 + 1e-3);
}

TEST_CASE("stop band kills states orthogonal to the kernel") {
  const GridSpec g = build_grid(1, 32, 8.0);
  const Potential p = harmonic(1.0, 1);
  const BlockOperator b(FactorSet::langevin(p, 1.0, g));
  const WaveState gibbs = gibbs_state(p, 1.0, g);
  // a state built from high eigenvectors only: x * gibbs, orthogonalized
  Eigen::VectorXcd v(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i)
    v[i] = g.point_at(i)[0] * gibbs.amplitudes[i];
  v -= gibbs.amplitudes * gibbs.amplitudes.dot(v);
  WaveState phi{v, g};
  phi.normalize();
  const FilterSpec fs = default_filter(b, 1.0);
  // all spectral weight sits at eigenvalue 1 = alpha^2 (s2 alpha)^2 ... i.e.
  // far beyond the stop edge: the filtered norm collapses below the floor
  CHECK_THROWS(threshold_svd(b, fs, phi));
  CHECK_THROWS(threshold_recurrence(b, fs, phi));
}

TEST_CASE("identity filter returns the input state") {
  const GridSpec g = build_grid(1, 16, 6.0);
  const BlockOperator b(FactorSet::langevin(harmonic(1.0, 1), 1.0, g));
  FilterSpec fs;
  fs.s1 = 0.5;
  fs.s2 = 0.9;
  fs.delta = 0.1;
  fs.degree = 0;
  fs.coeffs = Eigen::VectorXd::Ones(1);
  const WaveState phi = gaussian_state(g, 0.7, 0.9);
  const SvtResult r = threshold_recurrence(b, fs, phi);
  CHECK((r.state.amplitudes - phi.amplitudes).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("route equivalence on dense instances") {
  struct Case {
    Potential pot;
    GridSpec grid;
    double beta;
    double gap;
  };
  std::vector<Case> cases;
  cases.push_back({harmonic(1.0, 1), build_grid(1, 32, 8.0), 1.0, 1.0});
  cases.push_back({harmonic(2.0, 1), build_grid(1, 64, 8.0), 4.0, 2.0});
  {
    const Potential q = quartic_cosine_1d();
    const GridSpec g = build_grid(1, 64, 3.0);
    const BlockOperator b(FactorSet::langevin(q, 2.0, g));
    const SpectralReport rep = spectral_report(
        b, SpectralMode::iterative_deflated, gibbs_state(q, 2.0, g));
    cases.push_back({q, g, 2.0, rep.gap});
  }
  for (const auto& c : cases) {
    const BlockOperator b(FactorSet::langevin(c.pot, c.beta, c.grid));
    const FilterSpec fs = default_filter(b, c.gap);
    const WaveState phi = gaussian_state(c.grid, 0.4, 0.8);
    const SvtResult r1 = threshold_svd(b, fs, phi);
    const SvtResult r2 = threshold_recurrence(b, fs, phi);
    CHECK(state_overlap(r1.state, r2.state) >= 1.0 - 1e-8);
    CHECK(r1.success_probability ==
          doctest::Approx(r2.success_probability).epsilon(1e-6));
  }
}

TEST_CASE("approximate idempotence of the threshold") {
  const GridSpec g = build_grid(1, 32, 8.0);
  const Potential p = harmonic(1.0, 1);
  const BlockOperator b(FactorSet::langevin(p, 1.0, g));
  const FilterSpec fs = default_filter(b, 1.0);
  const WaveState phi = gaussian_state(g, 0.5, 1.1);
  const SvtResult once = threshold_recurrence(b, fs, phi);
  const SvtResult twice = threshold_recurrence(b, fs, once.state);
  CHECK((twice.state.amplitudes - once.state.amplitudes).norm() <= 2e-3);
}

TEST_CASE("success probability respects the warm-start lower bound") {
  const GridSpec g = build_grid(1, 32, 8.0);
  const Potential p = harmonic(1.0, 1);
  const BlockOperator b(FactorSet::langevin(p, 1.0, g));
  const WaveState gibbs = gibbs_state(p, 1.0, g);
  const FilterSpec fs = default_filter(b, 1.0);
  for (double std : {0.6, 1.0, 1.6}) {
    const WaveState phi = gaussian_state(g, 0.0, std);
    const double c1 = state_overlap(phi, gibbs);
    const SvtResult r = threshold_recurrence(b, fs, phi);
    CHECK(r.success_probability >= c1 * c1 - 2e-3);
  }
}

TEST_CASE("residual certificate") {
  const GridSpec g = build_grid(1, 32, 8.0);
  const Potential p = harmonic(1.0, 1);
  const BlockOperator b(FactorSet::langevin(p, 1.0, g));
  const FilterSpec fs = default_filter(b, 1.0);
  const WaveState phi = gaussian_state(g, 0.3, 1.2);
  const SvtResult r = threshold_recurrence(b, fs, phi);
  CHECK(r.residual <= fs.s2 + 1e-3);  // ||L state||/alpha below the stop edge
}

TEST_CASE("prepare_gibbs end to end") {
  const GridSpec g = build_grid(1, 32, 8.0);
  const Potential p = harmonic(1.0, 1);
  const WaveState gibbs = gibbs_state(p, 1.0, g);
  // slightly perturbed kernel state
  Eigen::VectorXcd amp = gibbs.amplitudes;
  auto rng = make_stream(5, 0);
  std::normal_distribution<double> gauss;
  for (std::int64_t i = 0; i < g.size(); ++i)
    amp[i] += 0.02 * std::complex<double>(gauss(rng), gauss(rng));
  WaveState phi{amp, g};
  phi.normalize();

  std::vector<std::string> log_lines;
  PrepareOptions opts;
  opts.log = [&](const std::string& l) { log_lines.push_back(l); };
  const PrepareOutcome out = prepare_gibbs(p, 1.0, g, phi, opts);
  CHECK(state_overlap(out.result.state, gibbs) >= 1.0 - 1e-3);
  CHECK(out.warm_overlap >= 0.9);
  CHECK(out.report.hamiltonian_gap == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(out.result.degree ==
        degree_for(out.report.gap / (2.0 * out.alpha), 1e-3));
  CHECK(log_lines.size() >= 4);  // assemble, warm-start, gap, filter, threshold
  for (const auto& l : log_lines) CHECK(l.find("\"stage\"") != std::string::npos);

  SUBCASE("cold start raises the floor error") {
    Eigen::VectorXcd bad(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i)
      bad[i] = g.point_at(i)[0] * gibbs.amplitudes[i];
    bad -= gibbs.amplitudes * gibbs.amplitudes.dot(bad);
    WaveState cold{bad, g};
    cold.normalize();
    PrepareOptions o2;
    o2.gap_hint = 1.0;
    CHECK_THROWS(prepare_gibbs(p, 1.0, g, cold, o2));
  }
}

TEST_CASE("degree doubles when the gap estimate halves") {
  const GridSpec g = build_grid(1, 32, 8.0);
  const BlockOperator b(FactorSet::langevin(harmonic(1.0, 1), 1.0, g));
  const FilterSpec f1 = default_filter(b, 1.0);
  const FilterSpec f2 = default_filter(b, 0.5);
  CHECK(std::abs(f2.degree - 2 * f1.degree) <= 1);
}
