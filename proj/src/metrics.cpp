#include "witten/metrics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "witten/fft.hpp"
#include "witten/rng.hpp"

namespace witten {

namespace {
// pad the FFT-ordered spectrum of one axis from n to m slots
void pad_axis(const Eigen::VectorXcd& in, Eigen::VectorXcd& out, int n,
              int m) {
  out.setZero();
  for (int k = 0; k < n / 2; ++k) out[k] = in[k];
  for (int k = 1; k < n / 2; ++k) out[m - k] = in[n - k];
  const std::complex<double> ny = in[n / 2];  // the -n/2 mode
  out[m - n / 2] += 0.5 * ny;
  out[n / 2] += 0.5 * ny;
}
}  // namespace

FineState boost_resolution(const WaveState& v, int r, std::int64_t guard) {
  const GridSpec& g = v.grid;
  const int m = 1 << r;
  if (m < g.n)
    throw std::invalid_argument("boost_resolution: need 2^r >= N");
  GridSpec fine{g.dim, m, g.half_width};
  if (fine.size() > guard)
    throw std::invalid_argument("boost_resolution: fine grid exceeds guard");

  // axis-by-axis: transform, pad, inverse-transform; intermediate shapes mix
  // coarse and fine axes, handled by explicit index arithmetic.
  Eigen::VectorXcd cur = v.amplitudes;
  std::vector<int> dims(g.dim, g.n);
  for (int ax = 0; ax < g.dim; ++ax) {
    // forward FFT along ax on the current mixed-shape array
    // (lines of length dims[ax]; strides from current dims)
    std::int64_t stride = 1;
    for (int a2 = g.dim - 1; a2 > ax; --a2) stride *= dims[a2];
    std::int64_t total = 1;
    for (int a2 = 0; a2 < g.dim; ++a2) total *= dims[a2];

    std::vector<int> ndims = dims;
    ndims[ax] = m;
    std::int64_t ntotal = 1;
    for (int a2 = 0; a2 < g.dim; ++a2) ntotal *= ndims[a2];
    Eigen::VectorXcd next(ntotal);
    std::int64_t nstride = 1;
    for (int a2 = g.dim - 1; a2 > ax; --a2) nstride *= ndims[a2];

    const std::int64_t lines = total / dims[ax];
    Eigen::VectorXcd line(g.n), pline(m);
    for (std::int64_t l = 0; l < lines; ++l) {
      const std::int64_t inner = l % stride;
      const std::int64_t outer = l / stride;
      const std::int64_t start = outer * stride * dims[ax] + inner;
      const std::int64_t nstart = outer * nstride * m + inner;
      for (int k = 0; k < g.n; ++k) line[k] = cur[start + k * stride];
      fft_axis(line, 1, g.n, 0, true);
      pad_axis(line, pline, g.n, m);
      fft_axis(pline, 1, m, 0, false);
      for (int k = 0; k < m; ++k) next[nstart + k * nstride] = pline[k];
    }
    cur = std::move(next);
    dims = ndims;
  }
  cur /= cur.norm();
  return FineState{std::move(cur), fine};
}

SampleBatch measure_and_jitter(const FineState& f, std::int64_t n,
                               std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("measure_and_jitter: n >= 1");
  const GridSpec& g = f.grid;
  const std::int64_t cells = g.size();
  Eigen::VectorXd cdf(cells);
  double acc = 0.0;
  for (std::int64_t i = 0; i < cells; ++i) {
    acc += std::norm(f.amplitudes[i]);
    cdf[i] = acc;
  }
  const double total = cdf[cells - 1];

  auto rng = make_stream(seed, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SampleBatch out;
  out.samples.resize(n, g.dim);
  out.sampler = "measure";
  out.seed = seed;
  out.params.n_steps = n;
  out.params.burn_in = 0;
  const double h = g.spacing();
  std::vector<int> k(g.dim);
  for (std::int64_t s = 0; s < n; ++s) {
    const double u = unif(rng) * total;
    const auto it = std::lower_bound(cdf.data(), cdf.data() + cells, u);
    std::int64_t idx = it - cdf.data();
    if (idx >= cells) idx = cells - 1;
    g.unravel(idx, k.data());
    for (int ax = 0; ax < g.dim; ++ax)
      out.samples(s, ax) = g.point(k[ax]) + (unif(rng) - 0.5) * h;
  }
  return out;
}

double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                   double cell_volume) {
  if (p.size() != q.size())
    throw std::invalid_argument("tv_distance: grid mismatch");
  return 0.5 * (p - q).cwiseAbs().sum() * cell_volume;
}

double chi2_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& sigma,
                       double cell_volume, double floor) {
  if (p.size() != sigma.size())
    throw std::invalid_argument("chi2_divergence: grid mismatch");
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (sigma[i] < floor) continue;
    const double r = p[i] / sigma[i] - 1.0;
    s += r * r * sigma[i];
  }
  return s * cell_volume;
}

double state_overlap(const WaveState& u, const WaveState& v) {
  if (u.amplitudes.size() != v.amplitudes.size())
    throw std::invalid_argument("state_overlap: grid mismatch");
  return std::abs(u.amplitudes.dot(v.amplitudes));
}

Eigen::VectorXd exact_density(const Potential& p, double beta,
                              const GridSpec& g) {
  Eigen::VectorXd v = tabulate(p, g);
  const double vmin = v.minCoeff();
  Eigen::VectorXd d(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    d[i] = std::exp(-beta * (v[i] - vmin));
  d /= d.sum() * g.cell_volume();
  return d;
}

}  // namespace witten
