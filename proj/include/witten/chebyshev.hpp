#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace witten {

// Smoothed-rectangle filter and its Chebyshev expansion, the classical
// emulation of singular value thresholding.
//
// s1/s2 are the validated pass/stop edges on the alpha-normalized singular
// value axis: the polynomial is ~1 on [0,s1] and ~0 on [s2,1]. The underlying
// plateau/half-cosine-ramp function is even in x; its ramp of width delta is
// centered between the edges.
struct FilterSpec {
  double s1 = 0.0;
  double s2 = 0.0;
  double delta = 0.0;
  int degree = 0;
  Eigen::VectorXd coeffs;  // c_0..c_degree of sum c_j T_j(x)
  double scale = 1.0;      // applied so |P| <= 1 on [-1,1]
  double shift = 0.0;
  double target_eps = 0.0;
};

struct FilterReport {
  double pass_err = 0.0;          // sup |P-1| on [0,s1], design polynomial
  double stop_err = 0.0;          // sup |P| on [s2,1]
  double sup_norm = 0.0;          // sup |P| on [-1,1] after rescale
  double sup_norm_raw = 0.0;      // before rescale
  double pass_err_rescaled = 0.0;
  double stop_err_rescaled = 0.0;
};

// Even extension of the cosine-smoothed rectangle: 1 on [0,s2], half-cosine
// ramp on [s2, s2+delta], 0 on [s2+delta, 1]. (The asymmetric [-s1 .. s2]
// plateau of the raw piecewise form only differs on the negative axis and is
// dropped by the even extension.)
std::function<double(double)> smooth_rectangle(double s1, double s2,
                                               double delta);

// Fourier-Chebyshev coefficients c_j = (2-d_{j0})/(2K) (-1)^j
// sum_l F(-cos th_l) e^{i j th_l}, th_l = pi l/K, via one FFT of length 2K.
Eigen::VectorXd chebyshev_coefficients(const std::function<double(double)>& F,
                                       int degree, int quadrature);

// Clenshaw evaluation of the (rescaled) polynomial; |x| <= 1 required.
double evaluate_filter(const FilterSpec& fs, double x);
double clenshaw(const Eigen::VectorXd& coeffs, double x);

// ceil(C log(1/eps) / gap_norm); the Chebyshev degree needed to resolve a
// normalized transition band of width gap_norm at error eps.
int degree_for(double gap_norm, double eps, double C = 2.0);

// Dense-grid validation; updates fs.scale when the raw sup norm exceeds 1.
FilterReport validate_filter(FilterSpec& fs, int grid_points = 20001);

// Full design: ramp centered in (s1,s2), coefficients, validation/rescale.
// quadrature <= 0 selects the default max(1024, 4*degree).
FilterSpec design_filter(double s1, double s2, double delta, int degree,
                         int quadrature = 0, double target_eps = 1e-3);

// CSV of (x, F(x), P(x)) on a dense grid, plus a JSON dump of the spec.
void export_filter_csv(const FilterSpec& fs, const std::string& path,
                       int grid_points = 2001);
std::string filter_spec_json(const FilterSpec& fs);

}  // namespace witten
