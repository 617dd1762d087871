// Timing harness comparing the OpenMP kernels against the serial reference.
// Prints per-kernel timings and the speedup; outputs are checked to agree.

#include <chrono>
#include <iostream>
#include <random>

#include "witten/fft.hpp"
#include "witten/operators.hpp"
#include "witten/parallel.hpp"
#include "witten/potential.hpp"
#include "witten/rng.hpp"

using namespace witten;
using clk = std::chrono::steady_clock;

namespace {
double ms_since(clk::time_point t0) {
  return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

Eigen::VectorXcd random_field(std::int64_t n, std::uint64_t seed) {
  auto rng = make_stream(seed, 0);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(n);
  for (std::int64_t i = 0; i < n; ++i) v[i] = {gauss(rng), gauss(rng)};
  return v;
}

struct Timing {
  double serial_ms, parallel_ms, max_diff;
};

template <typename Serial, typename Parallel>
Timing race(int reps, Serial&& s, Parallel&& p) {
  Timing t{};
  auto t0 = clk::now();
  Eigen::VectorXcd rs;
  for (int i = 0; i < reps; ++i) rs = s();
  t.serial_ms = ms_since(t0) / reps;
  t0 = clk::now();
  Eigen::VectorXcd rp;
  for (int i = 0; i < reps; ++i) rp = p();
  t.parallel_ms = ms_since(t0) / reps;
  t.max_diff = (rs - rp).cwiseAbs().maxCoeff();
  return t;
}

void report(const char* name, const Timing& t) {
  std::cout << name << ": serial " << t.serial_ms << " ms, omp "
            << t.parallel_ms << " ms, speedup "
            << t.serial_ms / t.parallel_ms << ", max|diff| " << t.max_diff
            << "\n";
}
}  // namespace

int main() {
  std::cout << "threads: " << effective_threads() << "\n";

  {  // axis spectral multiplier on the RELD-sized joint field (150 x 150)
    const int n = 150;
    Eigen::VectorXcd field = random_field(std::int64_t(n) * n, 1);
    Eigen::VectorXcd mult(n);
    for (int k = 0; k < n; ++k) mult[k] = std::complex<double>(0.0, k - n / 2);
    auto t = race(
        50,
        [&] {
          Eigen::VectorXcd f = field;
          ref::apply_axis_multiplier(f, 2, n, 0, mult);
          return f;
        },
        [&] {
          Eigen::VectorXcd f = field;
          apply_axis_multiplier(f, 2, n, 0, mult);
          return f;
        });
    report("axis-multiplier 150x150", t);
  }

  {  // full Witten apply for RELD at the gap-scan size
    const GridSpec g = build_grid(1, 150, 3.0);
    const Potential pot = quartic_cosine_1d();
    ReldParams rp;
    rp.beta = 10.0;
    const FactorSet fs = FactorSet::reld(pot, rp, g);
    Eigen::VectorXcd v = random_field(fs.field_size(), 2);
    // reference: serial loop over the same factor algebra
    auto serial = [&] {
      const int save = max_threads();
      set_max_threads(1);
      Eigen::VectorXcd r = fs.witten_apply(v);
      set_max_threads(save);
      return r;
    };
    auto t = race(20, serial, [&] { return fs.witten_apply(v); });
    report("reld witten_apply N=150", t);
  }

  {  // grid tabulation of the Muller-Brown potential
    const GridSpec g = build_grid(2, 128, 2.0);
    const Potential pot = muller_brown();
    auto serial = [&] {
      const int save = max_threads();
      set_max_threads(1);
      Eigen::VectorXd r = tabulate(pot, g);
      set_max_threads(save);
      return Eigen::VectorXcd(r.cast<std::complex<double>>());
    };
    auto t = race(10, serial,
                  [&] {
                    Eigen::VectorXd r = tabulate(pot, g);
                    return Eigen::VectorXcd(r.cast<std::complex<double>>());
                  });
    report("tabulate muller-brown 128^2", t);
  }
  return 0;
}
