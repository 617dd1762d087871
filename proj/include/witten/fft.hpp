#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace witten {

// Unitary 1D DFT applied along one axis of a row-major d-dimensional field
// (all axes of length n). Lines are independent and distributed across
// OpenMP threads; each line is transformed serially, so the result is
// bit-identical for any thread count. FFTW plans are created once per length
// with FFTW_ESTIMATE (deterministic) and shared via new-array execution.
void fft_axis(Eigen::VectorXcd& field, int dim, int n, int axis, bool forward);

// Multiply the spectrum along `axis` by `mult[k]` (FFT order):
// field <- IDFT_axis( mult .* DFT_axis(field) ).
void apply_axis_multiplier(Eigen::VectorXcd& field, int dim, int n, int axis,
                           const Eigen::VectorXcd& mult);

namespace ref {
// Serial reference implementations (same math, no OpenMP), kept for tests
// and the kernel benchmark.
void fft_axis(Eigen::VectorXcd& field, int dim, int n, int axis, bool forward);
void apply_axis_multiplier(Eigen::VectorXcd& field, int dim, int n, int axis,
                           const Eigen::VectorXcd& mult);
}  // namespace ref

}  // namespace witten
