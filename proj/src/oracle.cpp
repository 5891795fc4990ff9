#include "itw/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace itw {

namespace {

// Kahan-compensated accumulator; keeps reductions layout-stable.
template <typename Mat>
struct KahanSum {
  Mat sum;
  Mat comp;

  explicit KahanSum(Eigen::Index rows, Eigen::Index cols)
      : sum(Mat::Zero(rows, cols)), comp(Mat::Zero(rows, cols)) {}

  void add(const Mat& x) {
    const Mat y = x - comp;
    const Mat t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double kahan_total(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Jackknife standard error of the mean of xs (equal-weight leave-one-out).
double jackknife_se(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double mean = kahan_total(xs) / static_cast<double>(n);
  double ss = 0.0, comp = 0.0;
  for (double x : xs) {
    const double y = (x - mean) * (x - mean) - comp;
    const double t = ss + y;
    comp = (t - ss) - y;
    ss = t;
  }
  return std::sqrt(ss / (static_cast<double>(n) * (n - 1)));
}

Matrix kron_power(const Matrix& a, int k) {
  Matrix out = a;
  for (int i = 1; i < k; ++i) out = kron(out, a);
  return out;
}

Matrix diagonal_unitary(const Spectrum& sp, double t) {
  const int d = static_cast<int>(sp.energies.size());
  Matrix u = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    u(i, i) = std::exp(Complex(0.0, -sp.energies[i] * t * sp.time_rescale));
  }
  return u;
}

}  // namespace

Matrix sample_haar_unitary(int d, Rng& rng) {
  if (d < 1 || d > 64) throw std::invalid_argument("sample_haar_unitary: d in [1,64]");
  Matrix g(d, d);
  const double scale = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g(i, j) = Complex(normal01(rng), normal01(rng)) * scale;
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

McMatrix mc_isospectral_twirl(const Matrix& U, int k, const McConfig& cfg) {
  const int d = static_cast<int>(U.rows());
  double dim = 1.0;
  for (int i = 0; i < 2 * k; ++i) dim *= d;
  if (dim > 4096.0) throw std::invalid_argument("mc_isospectral_twirl: d^(2k) > 4096");
  const Eigen::Index m = static_cast<Eigen::Index>(dim);
  KahanSum<Matrix> sum(m, m);
  KahanSum<Eigen::MatrixXd> sumsq(m, m);
  for (long s = 0; s < cfg.n_samples; ++s) {
    Rng rng = rng_substream(cfg.seed, static_cast<std::uint64_t>(s));
    const Matrix g = sample_haar_unitary(d, rng);
    const Matrix v = g.adjoint() * U * g;
    const Matrix sample = kron(kron_power(v, k), kron_power(v.adjoint(), k));
    sum.add(sample);
    sumsq.add(sample.cwiseAbs2());
  }
  McMatrix out;
  out.n_samples = cfg.n_samples;
  const double n = static_cast<double>(cfg.n_samples);
  out.mean = sum.sum / n;
  if (cfg.n_samples > 1) {
    const Eigen::MatrixXd var =
        ((sumsq.sum / n) - out.mean.cwiseAbs2()).cwiseMax(0.0) * (n / (n - 1.0));
    out.se = (var / n).cwiseSqrt();
  } else {
    out.se = Eigen::MatrixXd::Zero(m, m);
  }
  return out;
}

McMoments mc_ensemble_c(const EnsembleSpec& spec,
                        const std::vector<double>& t_grid,
                        const McConfig& cfg) {
  const std::size_t nt = t_grid.size();
  const std::size_t ns = static_cast<std::size_t>(cfg.n_samples);
  std::vector<std::vector<double>> c2(nt, std::vector<double>(ns));
  std::vector<std::vector<double>> c3(nt, std::vector<double>(ns));
  std::vector<std::vector<double>> c4(nt, std::vector<double>(ns));
  for (std::size_t s = 0; s < ns; ++s) {
    Rng rng = rng_substream(cfg.seed, static_cast<std::uint64_t>(s));
    const Spectrum sp = sample_spectrum(spec, rng);
    for (std::size_t i = 0; i < nt; ++i) {
      const FormFactors ff = empirical_form_factors(sp, t_grid[i]);
      c2[i][s] = ff.c2.real();
      c3[i][s] = ff.c3.real();
      c4[i][s] = ff.c4.real();
    }
  }
  McMoments out;
  out.t = t_grid;
  out.n_samples = cfg.n_samples;
  for (std::size_t i = 0; i < nt; ++i) {
    out.c2_mean.push_back(kahan_total(c2[i]) / static_cast<double>(ns));
    out.c3_mean.push_back(kahan_total(c3[i]) / static_cast<double>(ns));
    out.c4_mean.push_back(kahan_total(c4[i]) / static_cast<double>(ns));
    out.c2_se.push_back(jackknife_se(c2[i]));
    out.c3_se.push_back(jackknife_se(c3[i]));
    out.c4_se.push_back(jackknife_se(c4[i]));
  }
  return out;
}

McScalar mc_frame_potential(const Spectrum& sp, double t, int k,
                            const McConfig& cfg) {
  const int d = static_cast<int>(sp.energies.size());
  if (d > 16 || k != 1) throw std::invalid_argument("mc_frame_potential: d <= 16, k = 1");
  const Matrix u = diagonal_unitary(sp, t);
  const Matrix udag = u.adjoint();
  const long block = 20;
  const long n_blocks = (cfg.n_samples + block - 1) / block;
  std::vector<double> block_means;
  block_means.reserve(static_cast<std::size_t>(n_blocks));
  long total = 0;
  for (long b = 0; b < n_blocks; ++b) {
    Rng rng = rng_substream(cfg.seed, static_cast<std::uint64_t>(b));
    const Matrix g1 = sample_haar_unitary(d, rng);
    const Matrix left = g1.adjoint() * udag * g1;
    const long in_block = std::min(block, cfg.n_samples - b * block);
    std::vector<double> xs(static_cast<std::size_t>(in_block));
    for (long j = 0; j < in_block; ++j) {
      const Matrix g2 = sample_haar_unitary(d, rng);
      const Complex tr = (left * g2.adjoint() * u * g2).trace();
      xs[static_cast<std::size_t>(j)] = std::norm(tr);
    }
    block_means.push_back(kahan_total(xs) / static_cast<double>(in_block));
    total += in_block;
  }
  McScalar out;
  out.n_samples = total;
  out.mean = kahan_total(block_means) / static_cast<double>(block_means.size());
  out.se = jackknife_se(block_means);
  return out;
}

double empirical_typicality(const EnsembleSpec& spec, double t, double delta,
                            const McConfig& cfg) {
  const std::size_t ns = static_cast<std::size_t>(cfg.n_samples);
  std::vector<double> vals(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    Rng rng = rng_substream(cfg.seed, static_cast<std::uint64_t>(s));
    const Spectrum sp = sample_spectrum(spec, rng);
    vals[s] = empirical_form_factors(sp, t).c2_tilde();
  }
  const double mean = kahan_total(vals) / static_cast<double>(ns);
  std::size_t hits = 0;
  for (double v : vals) {
    if (std::abs(v - mean) >= delta) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(ns);
}

}  // namespace itw
