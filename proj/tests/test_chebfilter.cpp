#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "witten/chebyshev.hpp"

using namespace witten;

TEST_CASE("smooth_rectangle shape") {
  const auto F = smooth_rectangle(0.1, 0.3, 0.1);
  CHECK(F(0.0) == 1.0);                       // plateau
  CHECK(F(1.0) == 0.0);                       // stop band
  CHECK(F(0.35) == doctest::Approx(0.5));     // ramp midpoint s2 + delta/2
  CHECK(F(-0.35) == doctest::Approx(0.5));    // even
  CHECK(F(0.2) == 1.0);
  CHECK_THROWS(smooth_rectangle(0.3, 0.1, 0.1));   // edges reversed
  CHECK_THROWS(smooth_rectangle(0.1, 0.95, 0.1));  // ramp past 1
}

TEST_CASE("chebyshev_coefficients recover simple expansions") {
  SUBCASE("constant function") {
    const Eigen::VectorXd c =
        chebyshev_coefficients([](double) { return 1.0; }, 8, 64);
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 1; j <= 8; ++j) CHECK(std::abs(c[j]) <= 1e-12);
  }
  SUBCASE("T_2") {
    const Eigen::VectorXd c = chebyshev_coefficients(
        [](double x) { return 2.0 * x * x - 1.0; }, 8, 64);
    CHECK(c[2] == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 0; j <= 8; ++j)
      if (j != 2) CHECK(std::abs(c[j]) <= 1e-12);
  }
  SUBCASE("smoothed rectangle approximation error") {
    const auto F = smooth_rectangle(0.1, 0.4, 0.1);
    const Eigen::VectorXd c = chebyshev_coefficients(F, 200, 1024);
    double err = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double x = -1.0 + 2.0 * i / 20000.0;
      err = std::max(err, std::abs(clenshaw(c, x) - F(x)));
    }
    CHECK(err <= 1e-3);
  }
  SUBCASE("quadrature count precondition") {
    CHECK_THROWS(chebyshev_coefficients([](double) { return 1.0; }, 64, 32));
  }
}

TEST_CASE("quadrature convergence: doubling K changes nothing") {
  const auto F = smooth_rectangle(0.1, 0.4, 0.1);
  const int deg = 100;
  const Eigen::VectorXd c1 = chebyshev_coefficients(F, deg, 4 * deg);
  const Eigen::VectorXd c2 = chebyshev_coefficients(F, deg, 8 * deg);
  CHECK((c1 - c2).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("clenshaw equals the direct Chebyshev sum") {
  const FilterSpec fs = design_filter(0.2, 0.4, 0.05, 60);
  for (double x : {-0.99, -0.5, 0.0, 0.3, 0.77, 1.0}) {
    double direct = 0.0;
    const double th = std::acos(x);
    for (int j = 0; j < fs.coeffs.size(); ++j)
      direct += fs.coeffs[j] * std::cos(j * th);
    direct = fs.scale * direct + fs.shift;
    CHECK(std::abs(evaluate_filter(fs, x) - direct) <= 1e-12);
  }
  CHECK_THROWS(evaluate_filter(fs, 1.5));
}

TEST_CASE("degree_for") {
  CHECK(degree_for(0.5, 1e-3) == 28);  // ceil(2 ln(1000)/0.5)
  // halving the gap doubles the degree
  const int d1 = degree_for(0.4, 1e-4);
  const int d2 = degree_for(0.2, 1e-4);
  CHECK(std::abs(d2 - 2 * d1) <= 1);
  CHECK_THROWS(degree_for(0.0, 1e-3));
}

TEST_CASE("validate_filter and rescale") {
  FilterSpec fs = design_filter(0.2, 0.3, 0.05, 400);
  const FilterReport rep = validate_filter(fs);
  CHECK(rep.pass_err <= 1e-3);
  CHECK(rep.stop_err <= 1e-3);
  CHECK(rep.sup_norm <= 1.0 + 1e-12);
  // evaluate_filter now returns the rescaled polynomial
  double sup = 0.0;
  for (int i = 0; i <= 10000; ++i)
    sup = std::max(sup,
                   std::abs(evaluate_filter(fs, -1.0 + 2.0 * i / 10000.0)));
  CHECK(sup <= 1.0 + 1e-12);
}

TEST_CASE("evenness of the designed filter") {
  const FilterSpec fs = design_filter(0.15, 0.35, 0.05, 150);
  double odd = 0.0;
  for (int j = 1; j < fs.coeffs.size(); j += 2)
    odd = std::max(odd, std::abs(fs.coeffs[j]));
  CHECK(odd <= 1e-10);
  for (int i = 0; i <= 2000; ++i) {
    const double x = double(i) / 2000.0;
    CHECK(std::abs(evaluate_filter(fs, x) - evaluate_filter(fs, -x)) <=
          1e-10);
  }
}

TEST_CASE("pass/stop errors shrink as the ramp widens at fixed degree") {
  double prev_stop = 1e9, prev_pass = 1e9;
  for (double delta : {0.02, 0.05, 0.1, 0.2}) {
    FilterSpec fs = design_filter(0.2, 0.6, delta, 120);
    const FilterReport rep = validate_filter(fs);
    CHECK(rep.stop_err <= prev_stop + 1e-12);
    CHECK(rep.pass_err <= prev_pass + 1e-12);
    prev_stop = rep.stop_err;
    prev_pass = rep.pass_err;
  }
}

TEST_CASE("log stop error is roughly linear in degree") {
  std::vector<double> degrees{50, 100, 200, 400};
  std::vector<double> logerr;
  for (double d : degrees) {
    FilterSpec fs = design_filter(0.2, 0.3, 0.05, int(d));
    logerr.push_back(std::log(validate_filter(fs).stop_err));
  }
  for (size_t i = 1; i < logerr.size(); ++i) CHECK(logerr[i] < logerr[i - 1]);
  // least-squares slope is negative
  double sx = 0, sy = 0, sxy = 0, sxx = 0;
  for (size_t i = 0; i < degrees.size(); ++i) {
    sx += degrees[i];
    sy += logerr[i];
    sxy += degrees[i] * logerr[i];
    sxx += degrees[i] * degrees[i];
  }
  const double n = degrees.size();
  CHECK((n * sxy - sx * sy) / (n * sxx - sx * sx) < 0.0);
}

TEST_CASE("filter export round trip") {
  FilterSpec fs = design_filter(0.2, 0.4, 0.05, 64);
  const std::string js = filter_spec_json(fs);
  CHECK(js.find("\"degree\": 64") != std::string::npos);
  export_filter_csv(fs, "/tmp/witten_filter_test.csv", 101);
  std::ifstream in("/tmp/witten_filter_test.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,F,P");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 101);
}
