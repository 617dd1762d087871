#include "witten/chebyshev.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "witten/fft.hpp"

namespace witten {

std::function<double(double)> smooth_rectangle(double s1, double s2,
                                               double delta) {
  if (!(0.0 <= s1 && s1 < s2 && s2 <= 1.0))
    throw std::invalid_argument("smooth_rectangle: need 0 <= s1 < s2 <= 1");
  if (!(delta > 0.0 && s2 + delta <= 1.0))
    throw std::invalid_argument("smooth_rectangle: need s2 + delta <= 1");
  return [s2, delta](double x) {
    const double y = std::abs(x);
    if (y <= s2) return 1.0;
    if (y >= s2 + delta) return 0.0;
    return 0.5 * (1.0 + std::cos(M_PI * (y - s2) / delta));
  };
}

Eigen::VectorXd chebyshev_coefficients(const std::function<double(double)>& F,
                                       int degree, int K) {
  if (K < degree + 1)
    throw std::invalid_argument("chebyshev_coefficients: K >= degree+1");
  Eigen::VectorXcd samples(2 * K);
  for (int l = 0; l < 2 * K; ++l) {
    const double th = M_PI * l / K;
    samples[l] = F(-std::cos(th));
  }
  // sum_l f_l e^{i j th_l} is the conjugate of an unnormalized forward DFT
  fft_axis(samples, 1, 2 * K, 0, true);
  samples *= std::sqrt(double(2 * K));
  Eigen::VectorXd c(degree + 1);
  for (int j = 0; j <= degree; ++j) {
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    const double pre = (j == 0 ? 1.0 : 2.0) / (2.0 * K);
    c[j] = pre * sgn * std::conj(samples[j]).real();
  }
  return c;
}

double clenshaw(const Eigen::VectorXd& c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (int j = int(c.size()) - 1; j >= 1; --j) {
    const double t = 2.0 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = t;
  }
  return x * b1 - b2 + c[0];
}

double evaluate_filter(const FilterSpec& fs, double x) {
  if (std::abs(x) > 1.0 + 1e-12)
    throw std::invalid_argument("evaluate_filter: |x| > 1");
  return fs.scale * clenshaw(fs.coeffs, std::clamp(x, -1.0, 1.0)) + fs.shift;
}

int degree_for(double gap_norm, double eps, double C) {
  if (!(gap_norm > 0.0 && gap_norm <= 1.0))
    throw std::invalid_argument("degree_for: gap_norm in (0,1]");
  return static_cast<int>(std::ceil(C * std::log(1.0 / eps) / gap_norm));
}

FilterReport validate_filter(FilterSpec& fs, int grid_points) {
  FilterReport rep;
  const double save_scale = fs.scale;
  fs.scale = 1.0;  // measure the raw design polynomial first
  double pass = 0.0, stop = 0.0, sup = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = -1.0 + 2.0 * i / (grid_points - 1);
    const double p = evaluate_filter(fs, x);
    sup = std::max(sup, std::abs(p));
    if (x >= 0.0 && x <= fs.s1) pass = std::max(pass, std::abs(p - 1.0));
    if (x >= fs.s2) stop = std::max(stop, std::abs(p));
  }
  rep.pass_err = pass;
  rep.stop_err = stop;
  rep.sup_norm_raw = sup;
  fs.scale = sup > 1.0 ? 1.0 / sup : save_scale;
  rep.sup_norm = sup > 1.0 ? 1.0 : sup * fs.scale;
  rep.pass_err_rescaled = 0.0;
  rep.stop_err_rescaled = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = -1.0 + 2.0 * i / (grid_points - 1);
    const double p = evaluate_filter(fs, x);
    if (x >= 0.0 && x <= fs.s1)
      rep.pass_err_rescaled = std::max(rep.pass_err_rescaled, std::abs(p - 1.0));
    if (x >= fs.s2)
      rep.stop_err_rescaled = std::max(rep.stop_err_rescaled, std::abs(p));
  }
  return rep;
}

FilterSpec design_filter(double s1, double s2, double delta, int degree,
                         int quadrature, double target_eps) {
  if (!(0.0 <= s1 && s1 < s2 && s2 <= 1.0))
    throw std::invalid_argument("design_filter: need 0 <= s1 < s2 <= 1");
  if (!(delta > 0.0 && delta <= s2 - s1))
    throw std::invalid_argument("design_filter: need 0 < delta <= s2 - s1");
  FilterSpec fs;
  fs.s1 = s1;
  fs.s2 = s2;
  fs.delta = delta;
  fs.degree = degree;
  fs.target_eps = target_eps;
  const int K = quadrature > 0 ? quadrature : std::max(1024, 4 * degree);
  // plateau ends at the ramp start, centered between the validated edges
  const double ramp_start = 0.5 * (s1 + s2 - delta);
  fs.coeffs = chebyshev_coefficients(smooth_rectangle(s1, ramp_start, delta),
                                     degree, K);
  validate_filter(fs);
  return fs;
}

void export_filter_csv(const FilterSpec& fs, const std::string& path,
                       int grid_points) {
  const auto F = smooth_rectangle(fs.s1, 0.5 * (fs.s1 + fs.s2 - fs.delta),
                                  fs.delta);
  std::ofstream out(path);
  out << "x,F,P\n";
  for (int i = 0; i < grid_points; ++i) {
    const double x = -1.0 + 2.0 * i / (grid_points - 1);
    out << x << "," << F(x) << "," << evaluate_filter(fs, x) << "\n";
  }
}

std::string filter_spec_json(const FilterSpec& fs) {
  nlohmann::json j;
  j["s1"] = fs.s1;
  j["s2"] = fs.s2;
  j["delta"] = fs.delta;
  j["degree"] = fs.degree;
  j["scale"] = fs.scale;
  j["shift"] = fs.shift;
  j["target_eps"] = fs.target_eps;
  j["coeffs"] = std::vector<double>(fs.coeffs.data(),
                                    fs.coeffs.data() + fs.coeffs.size());
  return j.dump(2);
}

}  // namespace witten
