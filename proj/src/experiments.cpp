#include "witten/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "witten/lindblad.hpp"
#include "witten/metrics.hpp"
#include "witten/reld.hpp"
#include "witten/svt.hpp"
#include "witten/lapack.hpp"
#include "witten/version.hpp"

namespace witten {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// fixed-format double for bit-exact re-runs
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::vector<std::string> kExperiments = {
    "gap-scan", "mb-compare",       "lindblad-warmstart",
    "filter-design", "sample", "weak-convergence"};

json defaults_for(const std::string& experiment) {
  json d;
  d["experiment"] = experiment;
  d["potential"] = {{"name", "quartic-cosine-1d"},
                    {"gamma", 1.0},
                    {"d", 1},
                    {"cap", nullptr}};
  d["grid"] = {{"n", 150}, {"a", 3.0}, {"d", 1}};
  d["beta"] = json::array({2.0, 4.0, 6.0, 8.0, 10.0});
  d["reld"] = {{"beta_prime", 1.0}, {"mu", 1.0}};
  d["gap_scan"] = {{"mode", "iterative"}, {"reld", true}};
  d["filter"] = {{"s1", 0.2}, {"s2", 0.3}, {"delta", 0.025},
                 {"degree", 200}, {"quadrature", 0}, {"eps", 1e-3}};
  d["lindblad"] = {{"dt", 1e-4}, {"t_final", 1.0}, {"x0", -1.7},
                   {"std", 0.05}, {"observe_every", 200}};
  d["weak"] = {{"dt", 1e-3}, {"t_final", 0.5}, {"x0", 1.0},
               {"std", 0.6}, {"check_every", 25}};
  d["sampler"] = {{"kind", "mala"}, {"dt", 1e-3}, {"n", 30000},
                  {"burn_in", -1}, {"x0", json::array({0.0})},
                  {"y0", json::array({0.0})}, {"bins", 50}};
  d["svt"] = {{"eps", 1e-3}, {"C", 2.0}, {"route", "recurrence"},
              {"gap_hint", nullptr}, {"warm_x0", nullptr},
              {"warm_std", 0.2}};
  d["measure"] = {{"r", 10}, {"n", 1000000}};
  d["mb"] = {{"target_overlap", 0.99},
             {"start", json::array({-0.558, 1.442})},
             {"start_std", 0.05},
             {"mala_schedule", json::array({2000, 6000, 20000, 60000, 200000,
                                            600000, 2000000})},
             {"degree_schedule",
              json::array({25, 50, 100, 200, 400, 800, 1600, 3200})}};
  d["seed"] = 1;
  d["out"] = "out/" + experiment;
  d["resume"] = false;
  return d;
}

void merge_into(json& base, const json& overrides) {
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (it->is_object() && base.contains(it.key()) &&
        base[it.key()].is_object()) {
      merge_into(base[it.key()], *it);
    } else {
      base[it.key()] = *it;
    }
  }
}

Potential potential_from(const json& cfg) {
  const json& p = cfg.at("potential");
  std::optional<double> cap;
  if (p.contains("cap") && !p["cap"].is_null()) cap = p["cap"].get<double>();
  return make_potential(p.at("name").get<std::string>(),
                        p.value("gamma", 1.0), p.value("d", 1), cap);
}

GridSpec grid_from(const json& cfg) {
  const json& g = cfg.at("grid");
  return build_grid(g.value("d", 1), g.at("n").get<int>(),
                    g.at("a").get<double>());
}

std::vector<double> betas_from(const json& cfg) {
  std::vector<double> b = cfg.at("beta").get<std::vector<double>>();
  if (b.empty()) throw std::invalid_argument("config: beta list is empty");
  return b;
}

int worker_count() {
  if (const char* env = std::getenv("WITTEN_SAMPLER_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

// Runs fn(i) for i in [0,count) on a small worker pool; entries are
// independent and derive their own seeds, so any worker count gives
// identical outputs.
void run_pool(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
          fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// per-beta checkpoint helpers
fs::path checkpoint_path(const fs::path& dir, const std::string& exp,
                         double beta) {
  return dir / (exp + ".beta" + num(beta) + ".partial.json");
}

std::optional<json> load_checkpoint(const fs::path& p, bool resume) {
  if (!resume || !fs::exists(p)) return std::nullopt;
  std::ifstream in(p);
  json j;
  in >> j;
  return j;
}

void store_checkpoint(const fs::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(2) << "\n";
}

Eigen::VectorXd gaussian_density(const GridSpec& g, double center,
                                 double std) {
  Eigen::VectorXd p0(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.point_at(i)[0];
    p0[i] = std::exp(-0.5 * (x - center) * (x - center) / (std * std));
  }
  p0 /= p0.sum() * g.cell_volume();
  return p0;
}

// ---------------------------------------------------------------------------
// gap-scan

struct GapRow {
  double beta, gap_ld, gap_reld, sgap_ld, sgap_reld;
  bool has_reld = true;
};

GapRow gap_scan_entry(const json& cfg, const Potential& pot,
                      const GridSpec& g, double beta, std::uint64_t seed) {
  const bool dense = cfg.at("gap_scan").value("mode", "iterative") == "dense";
  const bool with_reld = cfg.at("gap_scan").value("reld", true);
  SpectralOptions sopts;
  sopts.lanczos.seed = seed;

  GapRow row{};
  row.beta = beta;
  row.has_reld = with_reld;

  const WaveState gibbs = gibbs_state(pot, beta, g);
  BlockOperator block(FactorSet::langevin(pot, beta, g));
  WittenDirect direct(pot, beta, g);
  if (dense) {
    Eigen::VectorXd ev = eigh_dense_of(
        [&](const Eigen::VectorXcd& v) { return direct.apply(v); }, g.size());
    row.gap_ld = eigen_gap(ev);
    Eigen::VectorXd ef = eigh_dense_of(
        [&](const Eigen::VectorXcd& v) { return block.witten_apply(v); },
        g.size());
    row.sgap_ld = std::sqrt(eigen_gap(ef));
  } else {
    row.gap_ld = deflated_smallest_eigenvalue(
        [&](const Eigen::VectorXcd& v) { return direct.apply(v); }, g.size(),
        gibbs.amplitudes, block.alpha() * block.alpha(), sopts);
    row.sgap_ld =
        spectral_report(block, SpectralMode::iterative_deflated, gibbs, sopts)
            .gap;
  }

  if (with_reld) {
    ReldParams rp;
    rp.beta = beta;
    rp.beta_prime = cfg.at("reld").value("beta_prime", 1.0);
    rp.mu = cfg.at("reld").value("mu", 1.0);
    BlockOperator rblock(FactorSet::reld(pot, rp, g));
    ReldDirect rdirect(pot, rp, g);
    const WaveState jg = joint_gibbs_state(pot, rp, g);
    if (dense) {
      Eigen::VectorXd ev = eigh_dense_of(
          [&](const Eigen::VectorXcd& v) { return rdirect.apply(v); },
          rblock.cols());
      row.gap_reld = eigen_gap(ev);
      Eigen::VectorXd ef = eigh_dense_of(
          [&](const Eigen::VectorXcd& v) { return rblock.witten_apply(v); },
          rblock.cols());
      row.sgap_reld = std::sqrt(eigen_gap(ef));
    } else {
      row.gap_reld = deflated_smallest_eigenvalue(
          [&](const Eigen::VectorXcd& v) { return rdirect.apply(v); },
          rblock.cols(), jg.amplitudes, rblock.alpha() * rblock.alpha(),
          sopts);
      row.sgap_reld =
          spectral_report(rblock, SpectralMode::iterative_deflated, jg, sopts)
              .gap;
    }
  }
  return row;
}

void run_gap_scan(const json& cfg, const fs::path& out) {
  const Potential pot = potential_from(cfg);
  const GridSpec g = grid_from(cfg);
  const auto betas = betas_from(cfg);
  const bool resume = cfg.value("resume", false);
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();

  std::vector<GapRow> rows(betas.size());
  run_pool(int(betas.size()), [&](int i) {
    const fs::path cp = checkpoint_path(out, "gap-scan", betas[i]);
    if (auto j = load_checkpoint(cp, resume)) {
      rows[i] = GapRow{(*j)["beta"].get<double>(),
                       (*j)["gap_ld"].get<double>(),
                       (*j)["gap_reld"].get<double>(),
                       (*j)["singular_gap_ld"].get<double>(),
                       (*j)["singular_gap_reld"].get<double>(),
                       (*j)["has_reld"].get<bool>()};
      return;
    }
    rows[i] = gap_scan_entry(cfg, pot, g, betas[i], seed + i);
    store_checkpoint(cp, json{{"beta", rows[i].beta},
                              {"gap_ld", rows[i].gap_ld},
                              {"gap_reld", rows[i].gap_reld},
                              {"singular_gap_ld", rows[i].sgap_ld},
                              {"singular_gap_reld", rows[i].sgap_reld},
                              {"has_reld", rows[i].has_reld}});
  });

  std::ofstream csv(out / "gap_scan.csv");
  csv << "beta,gap_ld,gap_reld,singular_gap_ld,singular_gap_reld,"
         "inv_gap_ld,inv_gap_reld,inv_singular_gap_ld,inv_singular_gap_reld"
         " # gaps in 1/time units of the Langevin generator\n";
  for (const auto& r : rows) {
    csv << num(r.beta) << "," << num(r.gap_ld) << ","
        << (r.has_reld ? num(r.gap_reld) : "") << "," << num(r.sgap_ld) << ","
        << (r.has_reld ? num(r.sgap_reld) : "") << "," << num(1.0 / r.gap_ld)
        << "," << (r.has_reld ? num(1.0 / r.gap_reld) : "") << ","
        << num(1.0 / r.sgap_ld) << ","
        << (r.has_reld ? num(1.0 / r.sgap_reld) : "") << "\n";
  }
}

// ---------------------------------------------------------------------------
// mb-compare

void run_mb_compare(const json& cfg, const fs::path& out) {
  const Potential pot = potential_from(cfg);
  const GridSpec g = grid_from(cfg);
  const auto betas = betas_from(cfg);
  const json& mb = cfg.at("mb");
  const double target = mb.at("target_overlap").get<double>();
  const Eigen::Vector2d start(mb.at("start")[0].get<double>(),
                              mb.at("start")[1].get<double>());
  const double dt = cfg.at("sampler").value("dt", 1e-3);
  const int bins = cfg.at("sampler").value("bins", 50);
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();

  std::ofstream csv(out / "mb_compare.csv");
  csv << "beta,warm_overlap,mala_iters,mala_overlap,svt_degree,svt_overlap,"
         "svt_success_probability # overlaps are sqrt-density inner products\n";

  for (size_t bi = 0; bi < betas.size(); ++bi) {
    const double beta = betas[bi];
    // MALA iterations to the target histogram overlap
    std::int64_t mala_iters = -1;
    double mala_ov = 0.0;
    for (const auto& nj : mb.at("mala_schedule")) {
      const std::int64_t n = nj.get<std::int64_t>();
      SampleBatch sb =
          mala_chain(pot, beta, dt, n, start, seed + 101 * bi, 0);
      HistogramDensity h =
          histogram(sb, bins, -g.half_width, g.half_width);
      mala_ov = empirical_overlap(h, pot, beta);
      if (mala_ov >= target) {
        mala_iters = n;
        break;
      }
    }

    // SVT degrees to an equal-or-better state overlap
    const WaveState gibbs = gibbs_state(pot, beta, g);
    BlockOperator block(FactorSet::langevin(pot, beta, g));
    // warm Gaussian start centered at the same minimum
    const double wstd = mb.at("start_std").get<double>();
    Eigen::VectorXcd amp(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const Eigen::VectorXd x = g.point_at(i);
      amp[i] = std::exp(-0.25 * ((x[0] - start[0]) * (x[0] - start[0]) +
                                 (x[1] - start[1]) * (x[1] - start[1])) /
                        (wstd * wstd));
    }
    WaveState phi{amp, g};
    phi.normalize();
    const double warm = state_overlap(phi, gibbs);

    SpectralOptions sopts;
    sopts.lanczos.seed = seed + 17 * bi;
    SpectralReport rep =
        spectral_report(block, SpectralMode::iterative_deflated, gibbs, sopts);
    const double ghat = rep.gap / block.alpha();

    int svt_degree = -1;
    double svt_ov = 0.0, svt_succ = 0.0;
    for (const auto& dj : mb.at("degree_schedule")) {
      const int deg = dj.get<int>();
      FilterSpec fsp = design_filter(ghat / 4.0, 3.0 * ghat / 4.0,
                                     ghat / 8.0, deg);
      SvtResult res;
      try {
        res = threshold_recurrence(block, fsp, phi);
      } catch (const std::exception&) {
        continue;  // success floor: filter still too crude at this degree
      }
      svt_ov = state_overlap(res.state, gibbs);
      svt_succ = res.success_probability;
      if (svt_ov >= std::max(target, mala_ov)) {
        svt_degree = deg;
        break;
      }
    }

    csv << num(beta) << "," << num(warm) << "," << mala_iters << ","
        << num(mala_ov) << "," << svt_degree << "," << num(svt_ov) << ","
        << num(svt_succ) << "\n";
    csv.flush();
  }
}

// ---------------------------------------------------------------------------
// lindblad-warmstart

void run_lindblad_warmstart(const json& cfg, const fs::path& out) {
  const Potential pot = potential_from(cfg);
  const GridSpec g = grid_from(cfg);
  const auto betas = betas_from(cfg);
  const json& lb = cfg.at("lindblad");
  const double dt = lb.at("dt").get<double>();
  const double t_final = lb.at("t_final").get<double>();
  const double x0 = lb.at("x0").get<double>();
  const double std0 = lb.at("std").get<double>();
  const int every = lb.at("observe_every").get<int>();
  const bool resume = cfg.value("resume", false);

  std::ofstream summary(out / "lindblad_summary.csv");
  summary << "beta,overlap_t0,overlap_final # overlap with the encoded Gibbs"
             " state\n";
  std::mutex mtx;
  std::vector<std::string> lines(betas.size());

  run_pool(int(betas.size()), [&](int i) {
    const double beta = betas[i];
    const fs::path cp = checkpoint_path(out, "lindblad", beta);
    const fs::path curve =
        out / ("overlap_beta" + num(beta) + ".csv");
    if (auto j = load_checkpoint(cp, resume)) {
      lines[i] = num(beta) + "," + num((*j)["overlap_t0"].get<double>()) +
                 "," + num((*j)["overlap_final"].get<double>());
      return;
    }
    const FactorSet fs_ = FactorSet::langevin(pot, beta, g);
    LindbladGenerator gen(fs_);
    const WaveState gibbs = gibbs_state(pot, beta, g);
    DensityState rho0 = pure_density_from(gaussian_density(g, x0, std0), g);
    std::vector<TrajectoryObserver> obs{
        {"overlap",
         [&](double, const DensityState& r) { return overlap(r, gibbs); }},
        {"trace", [](double, const DensityState& r) { return r.trace(); }},
        {"min_eig",
         [](double, const DensityState& r) { return r.min_eigenvalue(); }}};
    LindbladRun run = rk4_evolve(rho0, gen, dt, t_final, obs, every);

    std::ofstream c(curve);
    c << "t,overlap,trace,min_eig\n";
    for (const auto& s : run.samples)
      c << num(s.t) << "," << num(s.values[0]) << "," << num(s.values[1])
        << "," << num(s.values[2]) << "\n";
    const double ov0 = run.samples.front().values[0];
    const double ov1 = run.samples.back().values[0];
    store_checkpoint(cp, json{{"overlap_t0", ov0}, {"overlap_final", ov1}});
    std::lock_guard<std::mutex> lock(mtx);
    lines[i] = num(beta) + "," + num(ov0) + "," + num(ov1);
  });
  for (const auto& l : lines) summary << l << "\n";
}

// ---------------------------------------------------------------------------
// filter-design

void run_filter_design(const json& cfg, const fs::path& out) {
  const json& f = cfg.at("filter");
  FilterSpec fsp = design_filter(
      f.at("s1").get<double>(), f.at("s2").get<double>(),
      f.at("delta").get<double>(), f.at("degree").get<int>(),
      f.value("quadrature", 0), f.value("eps", 1e-3));
  FilterReport rep = validate_filter(fsp);
  export_filter_csv(fsp, (out / "filter.csv").string());
  std::ofstream js(out / "filter_spec.json");
  js << filter_spec_json(fsp) << "\n";
  std::ofstream rj(out / "filter_report.json");
  rj << json{{"pass_err", rep.pass_err},
             {"stop_err", rep.stop_err},
             {"sup_norm", rep.sup_norm},
             {"sup_norm_raw", rep.sup_norm_raw},
             {"pass_err_rescaled", rep.pass_err_rescaled},
             {"stop_err_rescaled", rep.stop_err_rescaled}}
            .dump(2)
     << "\n";
}

// ---------------------------------------------------------------------------
// sample

void write_samples_csv(const fs::path& p, const SampleBatch& sb) {
  std::ofstream csv(p);
  csv << "sample";
  for (int i = 0; i < sb.samples.cols(); ++i) csv << ",x" << i;
  csv << " # coordinates in potential length units\n";
  for (Eigen::Index r = 0; r < sb.samples.rows(); ++r) {
    csv << r;
    for (Eigen::Index c2 = 0; c2 < sb.samples.cols(); ++c2)
      csv << "," << num(sb.samples(r, c2));
    csv << "\n";
  }
}

void write_hist_csv(const fs::path& p, const HistogramDensity& h) {
  std::ofstream csv(p);
  csv << "bin_center,density # right-open bins\n";
  for (int k = 0; k < h.density.size(); ++k)
    csv << num(h.center(k % h.bins)) << "," << num(h.density[k]) << "\n";
}

void run_sample(const json& cfg, const fs::path& out) {
  const Potential pot = potential_from(cfg);
  const GridSpec g = grid_from(cfg);
  const json& sp = cfg.at("sampler");
  const std::string kind = sp.at("kind").get<std::string>();
  const double beta = betas_from(cfg)[0];
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  const int bins = sp.value("bins", 50);

  Eigen::VectorXd x0 =
      Eigen::Map<const Eigen::VectorXd>(
          sp.at("x0").get<std::vector<double>>().data(), pot.dim)
          .eval();
  SampleBatch sb;
  json meta;
  if (kind == "ula" || kind == "mala") {
    const double dt = sp.at("dt").get<double>();
    const std::int64_t n = sp.at("n").get<std::int64_t>();
    sb = kind == "ula"
             ? ula_chain(pot, beta, dt, n, x0, seed, sp.value("burn_in", -1))
             : mala_chain(pot, beta, dt, n, x0, seed, sp.value("burn_in", -1));
  } else if (kind == "reld") {
    ReldParams rp;
    rp.beta = beta;
    rp.beta_prime = cfg.at("reld").value("beta_prime", 1.0);
    rp.mu = cfg.at("reld").value("mu", 1.0);
    Eigen::VectorXd y0 =
        Eigen::Map<const Eigen::VectorXd>(
            sp.at("y0").get<std::vector<double>>().data(), pot.dim)
            .eval();
    sb = reld_sde(pot, rp, sp.at("dt").get<double>(),
                  sp.at("n").get<std::int64_t>(), x0, y0, seed,
                  sp.value("burn_in", -1));
  } else if (kind == "svt") {
    // prepared state -> resolution boost -> measurement with jitter
    std::ofstream log(out / "stage_log.jsonl");
    PrepareOptions popts;
    popts.eps = cfg.at("svt").value("eps", 1e-3);
    popts.degree_constant = cfg.at("svt").value("C", 2.0);
    if (!cfg.at("svt")["gap_hint"].is_null())
      popts.gap_hint = cfg.at("svt")["gap_hint"].get<double>();
    popts.route = cfg.at("svt").value("route", "recurrence") == "svd"
                      ? SvtRoute::svd
                      : SvtRoute::recurrence;
    popts.log = [&](const std::string& line) { log << line << "\n"; };
    WaveState phi = gibbs_state(pot, beta, g);  // default warm start
    if (cfg.at("svt").contains("warm_x0") &&
        !cfg.at("svt")["warm_x0"].is_null()) {
      const double wx = cfg.at("svt")["warm_x0"].get<double>();
      const double ws = cfg.at("svt").value("warm_std", 0.2);
      Eigen::VectorXcd amp(g.size());
      for (std::int64_t i = 0; i < g.size(); ++i) {
        const Eigen::VectorXd x = g.point_at(i);
        double q = 0.0;
        for (int ax = 0; ax < g.dim; ++ax) q += (x[ax] - wx) * (x[ax] - wx);
        amp[i] = std::exp(-0.25 * q / (ws * ws));
      }
      phi = WaveState{amp, g};
      phi.normalize();
    }
    PrepareOutcome res = prepare_gibbs(pot, beta, g, phi, popts);
    FineState fine =
        boost_resolution(res.result.state, cfg.at("measure").at("r").get<int>());
    sb = measure_and_jitter(fine, cfg.at("measure").at("n").get<std::int64_t>(),
                            seed);
    meta["alpha"] = res.alpha;
    meta["gap"] = res.report.gap;
    meta["degree"] = res.result.degree;
    meta["success_probability"] = res.result.success_probability;
  } else {
    throw std::invalid_argument("config: sampler.kind must be one of "
                                "ula|mala|reld|svt, got " + kind);
  }

  write_samples_csv(out / "samples.csv", sb);
  HistogramDensity h = histogram(sb, bins, -g.half_width, g.half_width, 0,
                                 pot.dim);
  write_hist_csv(out / "histogram.csv", h);

  // metrics against the exact bin-grid density
  GridSpec bin_grid = build_grid(pot.dim, bins, g.half_width);
  Eigen::VectorXd exact(h.density.size());
  {
    Eigen::VectorXd pt(pot.dim);
    std::vector<int> k(pot.dim);
    for (Eigen::Index c = 0; c < exact.size(); ++c) {
      std::int64_t rem = c;
      for (int i = pot.dim - 1; i >= 0; --i) {
        k[i] = int(rem % bins);
        rem /= bins;
      }
      for (int i = 0; i < pot.dim; ++i) pt[i] = h.center(k[i]);
      exact[c] = pot.eval(pt);
    }
    const double vmin = exact.minCoeff();
    for (Eigen::Index c = 0; c < exact.size(); ++c)
      exact[c] = std::exp(-beta * (exact[c] - vmin));
    double vol = 1.0;
    for (int i = 0; i < pot.dim; ++i) vol *= h.bin_width();
    exact /= exact.sum() * vol;
  }
  double vol = 1.0;
  for (int i = 0; i < pot.dim; ++i) vol *= h.bin_width();
  meta["seed"] = sb.seed;
  meta["sampler"] = sb.sampler;
  meta["acceptance_rate"] = sb.acceptance_rate;
  meta["n_samples"] = sb.samples.rows();
  std::ofstream mj(out / "run_metadata.json");
  mj << meta.dump(2) << "\n";
  std::ofstream mc(out / "metrics.csv");
  mc << "tv,chi2,overlap # vs the exact bin-grid Gibbs density\n";
  mc << num(tv_distance(h.density, exact, vol)) << ","
     << num(chi2_divergence(h.density, exact, vol)) << ","
     << num(empirical_overlap(h, pot, beta)) << "\n";
}

// ---------------------------------------------------------------------------
// weak-convergence

void run_weak_convergence(const json& cfg, const fs::path& out) {
  const Potential pot = potential_from(cfg);
  const GridSpec g = grid_from(cfg);
  const double beta = betas_from(cfg)[0];
  const json& w = cfg.at("weak");
  const FactorSet fs_ = FactorSet::langevin(pot, beta, g);
  const Eigen::VectorXd p0 =
      gaussian_density(g, w.at("x0").get<double>(), w.at("std").get<double>());

  std::ofstream csv(out / "weak_convergence.csv");
  csv << "w,max_discrepancy # |Tr[w rho(t)] - sum w p(t) h^d| over checkpoints\n";
  const std::vector<std::pair<std::string, std::function<double(double)>>>
      tests = {{"1", [](double) { return 1.0; }},
               {"x", [](double x) { return x; }},
               {"x^2", [](double x) { return x * x; }}};
  for (const auto& [name, fn] : tests) {
    Eigen::VectorXd wv(g.size());
    for (std::int64_t i = 0; i < g.size(); ++i) wv[i] = fn(g.point_at(i)[0]);
    const double disc = weak_convergence_check(
        fs_, pot, beta, g, wv, p0, w.at("dt").get<double>(),
        w.at("t_final").get<double>(), w.at("check_every").get<int>());
    csv << name << "," << num(disc) << "\n";
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.contains("experiment"))
    throw std::invalid_argument("config: missing field 'experiment'");
  const std::string exp = j["experiment"].get<std::string>();
  bool known = false;
  for (const auto& e : kExperiments) known |= (e == exp);
  if (!known)
    throw std::invalid_argument("config: unknown experiment '" + exp + "'");
  ExperimentConfig c;
  c.experiment = exp;
  c.raw = defaults_for(exp);
  merge_into(c.raw, j);
  // validation with field-level messages
  potential_from(c.raw);
  grid_from(c.raw);
  betas_from(c.raw);
  if (!c.raw.contains("seed") || !c.raw["seed"].is_number())
    throw std::invalid_argument("config: 'seed' must be a number");
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  json j;
  in >> j;
  return from_json(j);
}

int run_experiment(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const json& cfg = config.raw;
  const fs::path out(cfg.at("out").get<std::string>());
  fs::create_directories(out);

  if (config.experiment == "gap-scan") {
    run_gap_scan(cfg, out);
  } else if (config.experiment == "mb-compare") {
    run_mb_compare(cfg, out);
  } else if (config.experiment == "lindblad-warmstart") {
    run_lindblad_warmstart(cfg, out);
  } else if (config.experiment == "filter-design") {
    run_filter_design(cfg, out);
  } else if (config.experiment == "sample") {
    run_sample(cfg, out);
  } else if (config.experiment == "weak-convergence") {
    run_weak_convergence(cfg, out);
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json manifest;
  manifest["config"] = cfg;
  manifest["version"] = kVersion;
  manifest["wall_time_s"] = wall;
  std::ofstream mf(out / "manifest.json");
  mf << manifest.dump(2) << "\n";
  return 0;
}

}  // namespace witten
