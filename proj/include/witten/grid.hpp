#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace witten {

// Truncated periodic box [-a,a]^d, N points per axis, spacing h = 2a/N.
// Points x_k = -a + k h; frequencies xi in {-N/2, ..., N/2-1} stored in FFT
// output order (0..N/2-1, -N/2..-1).
struct GridSpec {
  int dim = 1;
  int n = 0;            // points per axis, even
  double half_width = 0.0;

  double spacing() const { return 2.0 * half_width / n; }
  std::int64_t size() const {
    std::int64_t s = 1;
    for (int i = 0; i < dim; ++i) s *= n;
    return s;
  }
  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= spacing();
    return v;
  }
  double point(int k) const { return -half_width + k * spacing(); }
  // FFT-order index -> integer frequency xi
  int freq(int k) const { return k < n / 2 ? k : k - n; }
  // frequency multiplier of the spectral derivative, pi*xi/a
  double freq_multiplier(int k) const {
    return M_PI * freq(k) / half_width;
  }

  // decompose a flat row-major index (axis 0 slowest) into per-axis indices
  void unravel(std::int64_t idx, int* out) const {
    for (int ax = dim - 1; ax >= 0; --ax) {
      out[ax] = static_cast<int>(idx % n);
      idx /= n;
    }
  }
  Eigen::VectorXd point_at(std::int64_t idx) const {
    Eigen::VectorXd x(dim);
    std::vector<int> k(dim);
    unravel(idx, k.data());
    for (int ax = 0; ax < dim; ++ax) x[ax] = point(k[ax]);
    return x;
  }
};

// Default memory guard: N^d grid values (complex) must stay desk-scale.
inline constexpr std::int64_t kGridGuard = std::int64_t(1) << 26;

GridSpec build_grid(int d, int n, double a,
                    std::int64_t guard = kGridGuard);

}  // namespace witten
