#include "witten/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "witten/parallel.hpp"

namespace witten {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// One in-place 1D plan pair per length, created under a lock. fftw_execute_dft
// on distinct arrays is thread-safe.
PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(n);
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(buf);
  return cache.emplace(n, p).first->second;
}

struct LineLayout {
  std::int64_t count;   // number of lines
  std::int64_t stride;  // stride between consecutive points of a line
};

LineLayout layout(int dim, int n, int axis) {
  std::int64_t stride = 1;
  for (int ax = dim - 1; ax > axis; --ax) stride *= n;
  std::int64_t total = 1;
  for (int ax = 0; ax < dim; ++ax) total *= n;
  return {total / n, stride};
}

// start offset of line `l` for the given axis layout
std::int64_t line_start(std::int64_t l, int n, std::int64_t stride) {
  const std::int64_t inner = l % stride;
  const std::int64_t outer = l / stride;
  return outer * (stride * n) + inner;
}

template <typename LineOp>
void for_each_line_parallel(Eigen::VectorXcd& field, int dim, int n, int axis,
                            LineOp&& op) {
  const auto [count, stride] = layout(dim, n, axis);
  parallel_for(count, [&](std::int64_t l) {
    op(field.data() + line_start(l, n, stride), stride);
  });
}

template <typename LineOp>
void for_each_line_serial(Eigen::VectorXcd& field, int dim, int n, int axis,
                          LineOp&& op) {
  const auto [count, stride] = layout(dim, n, axis);
  for (std::int64_t l = 0; l < count; ++l)
    op(field.data() + line_start(l, n, stride), stride);
}

struct FftLine {
  int n;
  bool forward;
  void operator()(std::complex<double>* base, std::int64_t stride) const {
    thread_local std::vector<std::complex<double>> buf;
    buf.resize(n);
    for (int k = 0; k < n; ++k) buf[k] = base[k * stride];
    auto& p = plans_for(n);
    fftw_execute_dft(forward ? p.fwd : p.bwd,
                     reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
    const double scale = 1.0 / std::sqrt(double(n));
    for (int k = 0; k < n; ++k) base[k * stride] = buf[k] * scale;
  }
};

struct MultLine {
  int n;
  const Eigen::VectorXcd* mult;
  void operator()(std::complex<double>* base, std::int64_t stride) const {
    thread_local std::vector<std::complex<double>> buf;
    buf.resize(n);
    for (int k = 0; k < n; ++k) buf[k] = base[k * stride];
    auto& p = plans_for(n);
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(p.fwd, raw, raw);
    for (int k = 0; k < n; ++k) buf[k] *= (*mult)[k];
    fftw_execute_dft(p.bwd, raw, raw);
    const double scale = 1.0 / double(n);
    for (int k = 0; k < n; ++k) base[k * stride] = buf[k] * scale;
  }
};

}  // namespace

void fft_axis(Eigen::VectorXcd& field, int dim, int n, int axis,
              bool forward) {
  for_each_line_parallel(field, dim, n, axis, FftLine{n, forward});
}

void apply_axis_multiplier(Eigen::VectorXcd& field, int dim, int n, int axis,
                           const Eigen::VectorXcd& mult) {
  if (mult.size() != n)
    throw std::invalid_argument("apply_axis_multiplier: multiplier size");
  for_each_line_parallel(field, dim, n, axis, MultLine{n, &mult});
}

namespace ref {

void fft_axis(Eigen::VectorXcd& field, int dim, int n, int axis,
              bool forward) {
  for_each_line_serial(field, dim, n, axis, FftLine{n, forward});
}

void apply_axis_multiplier(Eigen::VectorXcd& field, int dim, int n, int axis,
                           const Eigen::VectorXcd& mult) {
  if (mult.size() != n)
    throw std::invalid_argument("apply_axis_multiplier: multiplier size");
  for_each_line_serial(field, dim, n, axis, MultLine{n, &mult});
}

}  // namespace ref

}  // namespace witten
