#include "itw/formfactors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "itw/special.hpp"

namespace itw {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
using C = std::complex<double>;
}  // namespace

FormFactors empirical_form_factors(const Spectrum& sp, double t) {
  if (t < 0.0) throw std::invalid_argument("empirical_form_factors: t must be >= 0");
  const double tau = t * sp.time_rescale;
  C z1{0, 0}, z2{0, 0}, z4{0, 0};  // tr U, tr U^2 at tau, tr U at 2*tau (= tr U^2)
  for (double e : sp.energies) {
    z1 += std::exp(C(0.0, -e * tau));
    z2 += std::exp(C(0.0, -2.0 * e * tau));
  }
  z4 = z2;  // tr of U at doubled time equals tr U^2
  FormFactors ff;
  ff.t = t;
  ff.d = static_cast<int>(sp.energies.size());
  const C z1c = std::conj(z1);
  ff.c2 = z1 * z1c;
  ff.c3 = z2 * z1c * z1c;
  ff.c4 = z1 * z1 * z1c * z1c;
  ff.c2_2t = z4 * std::conj(z4);
  return ff;
}

// ---------------------------------------------------------------------------
// GUE closed forms (box-approximated sine kernel). Signs pinned by the forced
// t=0 values c_a(0) = d^a and by Monte Carlo cross-checks.

double gue_c2(int d, double t) {
  const double r1 = sk_r1(t), r2 = sk_r2(d, t);
  return d + static_cast<double>(d) * d * r1 * r1 - r2;
}

double gue_c3(int d, double t) {
  const double dd = d;
  const double r1 = sk_r1(t), r2 = sk_r2(dd, t), r3 = sk_r3(t);
  const double r1_2 = sk_r1(2 * t), r2_2 = sk_r2(dd, 2 * t), r3_2 = sk_r3(2 * t);
  return dd * dd * dd * r1_2 * r1 * r1 - dd * r1_2 * r2 * r3_2 -
         2.0 * dd * r1 * r2_2 * r3 + dd * dd * r1_2 * r1_2 +
         2.0 * dd * dd * r1 * r1 + r2_2 - 2.0 * r2 + dd;
}

double gue_c4(int d, double t) {
  const double dd = d;
  const double r1 = sk_r1(t), r2 = sk_r2(dd, t), r3 = sk_r3(t);
  const double r1_2 = sk_r1(2 * t), r2_2 = sk_r2(dd, 2 * t), r3_2 = sk_r3(2 * t);
  const double r1sq = r1 * r1;
  return dd * dd * dd * dd * r1sq * r1sq + 2.0 * dd * dd * dd * r1_2 * r1sq +
         4.0 * (dd - 1.0) * dd * dd * r1sq + dd * dd * r1_2 * r1_2 -
         2.0 * dd * dd * r1sq * r2 * r3_2 - 4.0 * dd * dd * r1sq * r2 -
         2.0 * dd * r1_2 * r2 * r3_2 + r2 * r2 * r3_2 * r3_2 + 2.0 * r2 * r2 +
         6.0 * dd * r1 * r3 * r2 - 2.0 * dd * r1 * r3 * r2_2 -
         (4.0 * dd - 2.0) * r2 - r2_2 + 2.0 * dd * dd - dd;
}

// ---------------------------------------------------------------------------
// GDE closed forms. Exact: each index-coincidence class of the defining sums
// contributes exp(-a^2 t^2/4) per level with the class's squared phase
// weights; includes the doubly-paired e^{-t^2} term of c4.

double gde_c2(int d, double t) {
  const double dd = d;
  return dd + dd * (dd - 1.0) * std::exp(-0.25 * t * t);
}

double gde_c3(int d, double t) {
  const double dd = d;
  const double u = t * t;
  return dd + dd * (dd - 1.0) * std::exp(-u) +
         2.0 * dd * (dd - 1.0) * std::exp(-0.25 * u) +
         dd * (dd - 1.0) * (dd - 2.0) * std::exp(-0.75 * u);
}

double gde_c4(int d, double t) {
  const double dd = d;
  const double u = t * t;
  return dd * (2.0 * dd - 1.0) + dd * (dd - 1.0) * std::exp(-u) +
         4.0 * dd * (dd - 1.0) * (dd - 1.0) * std::exp(-0.25 * u) +
         2.0 * dd * (dd - 1.0) * (dd - 2.0) * std::exp(-0.75 * u) +
         dd * (dd - 1.0) * (dd - 2.0) * (dd - 3.0) * std::exp(-0.5 * u);
}

// ---------------------------------------------------------------------------
// Nearest-level-spacing closed sums. Independent spacings make every
// ensemble-averaged phase factor a product of characteristic-function powers;
// everything reduces to O(d) weighted geometric sums in g = g_E(t/d) and
// h = g_E(2t/d).

namespace {

// Q(x) = 2 Re sum_{s=1}^{d-1} (d-s) x^s, via the closed ratio with a series
// fallback for the removable singularity at x -> 1.
double weighted_geometric_q(C x, int d) {
  const C eps = x - 1.0;
  const double dd = d;
  if (std::abs(eps) < 1e-6) {
    const double dp = dd + 1.0;
    const C e2 = eps * eps;
    C val = dd * (dd - 1.0) / 2.0;
    val += dp * dd * (dd - 1.0) / 6.0 * eps;
    val += dp * dd * (dd - 1.0) * (dd - 2.0) / 24.0 * e2;
    val += dp * dd * (dd - 1.0) * (dd - 2.0) * (dd - 3.0) / 120.0 * e2 * eps;
    val += dp * dd * (dd - 1.0) * (dd - 2.0) * (dd - 3.0) * (dd - 4.0) / 720.0 * e2 * e2;
    return 2.0 * val.real();
  }
  const C num = std::pow(x, d + 1) - dd * x * x + (dd - 1.0) * x;
  return 2.0 * (num / (eps * eps)).real();
}

struct NlsSums {
  double q_g = 0.0;       // Q at g
  double q_h = 0.0;       // Q at h
  C v1{0, 0}, v3{0, 0};   // pair sums sum (d-a-b) g^b h^a and g^a conj(g)^b
  C x1{0, 0}, x2{0, 0}, x3{0, 0};  // triple sums
};

NlsSums nls_sums(EnsembleKind kind, int d, double t) {
  const double tau = t / d;
  const C g = characteristic_function(kind, tau);
  const C h = characteristic_function(kind, 2.0 * tau);
  const C gb = std::conj(g);

  NlsSums s;
  s.q_g = weighted_geometric_q(g, d);
  s.q_h = weighted_geometric_q(h, d);

  // B(n) = sum_{b=1}^{n-1} (n-b) h^b for n = 2..d-2, built by
  // B(n+1) = B(n) + G(n), G(n) = sum_{b<=n} h^b.
  std::vector<C> bsum(std::max(d - 1, 2), C{0, 0});
  {
    C gpow = h;          // h^n during the loop
    C gsum = h;          // G(n)
    for (int n = 2; n <= d - 2; ++n) {
      bsum[n] = bsum[n - 1] + gsum;
      gpow *= h;
      gsum += gpow;
    }
  }

  // Single pass over the outer index s with O(1) recurrences:
  //   P(s) = sum_{a=1}^{s-1} h^a g^{s-a},  P(s+1) = g (P(s) + h^s)
  //   M(s) = sum_{a=1}^{s-1} g^a gb^{s-a}, M(s+1) = gb (M(s) + g^s)
  C p = h * g, m = g * gb;
  C gpow = g * g;   // g^s
  C hpow = h * h;   // h^s
  for (int sdx = 2; sdx <= d - 1; ++sdx) {
    const double w = d - sdx;
    s.v1 += w * p;
    s.v3 += w * m;
    if (sdx <= d - 2) {
      s.x1 += (sdx - 1.0) * gpow * bsum[d - sdx];
      s.x2 += 0.5 * w * (w - 1.0) * m;
      s.x3 += (sdx - 1.0) * 0.5 * w * (w - 1.0) * gpow;
    }
    p = g * (p + hpow);
    m = gb * (m + gpow);
    gpow *= g;
    hpow *= h;
  }
  return s;
}

}  // namespace

double nls_c2(EnsembleKind kind, int d, double t) {
  const C g = characteristic_function(kind, t / d);
  return d + weighted_geometric_q(g, d);
}

std::complex<double> nls_c3(EnsembleKind kind, int d, double t) {
  const NlsSums s = nls_sums(kind, d, t);
  const double re =
      d + s.q_h + 2.0 * s.q_g + 2.0 * (2.0 * s.v1 + s.v3).real();
  return {re, 0.0};
}

double nls_c4(EnsembleKind kind, int d, double t) {
  const NlsSums s = nls_sums(kind, d, t);
  const double dd = d;
  return 8.0 * (s.x1 + s.x2 + s.x3).real() +
         4.0 * (2.0 * s.v1 + s.v3).real() + 4.0 * (dd - 1.0) * s.q_g +
         s.q_h + 2.0 * dd * (dd - 1.0) + dd;
}

// ---------------------------------------------------------------------------

double envelope_c2(EnsembleKind kind, int d, double t) {
  const double dd = d;
  switch (kind) {
    case EnsembleKind::POISSON:
      return 1.0 / dd + 2.0 / (t * t);
    case EnsembleKind::GUE:
      // 1/(pi t^3) dominates r1^2 exactly (J1(x)^2 <= 2/(pi x)); the ramp
      // contribution (d - r2)/d^2 is t/(2d^2) capped at 1/d.
      return 1.0 / (kPi * t * t * t) + std::min(t / (2.0 * dd * dd), 1.0 / dd);
    default:
      throw std::invalid_argument("envelope_c2: unsupported ensemble");
  }
}

double envelope_c4(EnsembleKind kind, int d, double t) {
  const double dd = d;
  switch (kind) {
    case EnsembleKind::POISSON:
      return (2.0 * dd - 1.0) / (dd * dd * dd) + 6.0 / (t * t * t * t) +
             (16.0 * dd - 15.0) / (dd * dd * t * t);
    case EnsembleKind::GUE: {
      const double rho = t >= 2.0 * dd ? 0.0 : 1.0 - t / (2.0 * dd);
      const double rho2 = 2.0 * t >= 2.0 * dd ? 0.0 : 1.0 - t / dd;
      const double t52 = std::pow(t, 2.5);
      const double inner =
          2.0 - 31.0 / (8.0 * kPi * t * t * t) -
          (8.0 * rho2 - 16.0 * rho + rho / std::sqrt(2.0)) /
              (std::pow(kPi, 1.5) * t52) -
          4.0 * rho + 2.0 * rho * rho + rho * rho / (kPi * kPi * t * t);
      return 1.0 / (kPi * kPi * std::pow(t, 6)) + inner / (dd * dd);
    }
    default:
      throw std::invalid_argument("envelope_c4: unsupported ensemble");
  }
}

double asymptotic_value(FormFactorKind which, int d) {
  const double dd = d;
  switch (which) {
    case FormFactorKind::C2: return dd;
    case FormFactorKind::C3: return dd;
    case FormFactorKind::C4: return dd * (2.0 * dd - 1.0);
  }
  return 0.0;
}

double haar_value(FormFactorKind which, int) {
  switch (which) {
    case FormFactorKind::C2: return 1.0;
    case FormFactorKind::C3: return 0.0;
    case FormFactorKind::C4: return 2.0;
  }
  return 0.0;
}

FormFactors analytic_form_factors(EnsembleKind kind, int d, double t) {
  FormFactors ff;
  ff.t = t;
  ff.d = d;
  switch (kind) {
    case EnsembleKind::GUE:
      ff.c2 = gue_c2(d, t);
      ff.c3 = gue_c3(d, t);
      ff.c4 = gue_c4(d, t);
      ff.c2_2t = gue_c2(d, 2.0 * t);
      break;
    case EnsembleKind::GDE:
      ff.c2 = gde_c2(d, t);
      ff.c3 = gde_c3(d, t);
      ff.c4 = gde_c4(d, t);
      ff.c2_2t = gde_c2(d, 2.0 * t);
      break;
    case EnsembleKind::POISSON:
    case EnsembleKind::WD_GOE:
    case EnsembleKind::WD_GUE:
      ff.c2 = nls_c2(kind, d, t);
      ff.c3 = nls_c3(kind, d, t);
      ff.c4 = nls_c4(kind, d, t);
      ff.c2_2t = nls_c2(kind, d, 2.0 * t);
      break;
    case EnsembleKind::HAAR:
      return haar_form_factors(d);
  }
  return ff;
}

FormFactors asymptotic_form_factors(int d) {
  FormFactors ff;
  ff.d = d;
  ff.t = std::numeric_limits<double>::infinity();
  ff.c2 = asymptotic_value(FormFactorKind::C2, d);
  ff.c3 = asymptotic_value(FormFactorKind::C3, d);
  ff.c4 = asymptotic_value(FormFactorKind::C4, d);
  ff.c2_2t = asymptotic_value(FormFactorKind::C2, d);
  return ff;
}

FormFactors haar_form_factors(int d) {
  FormFactors ff;
  ff.d = d;
  ff.t = std::numeric_limits<double>::infinity();
  ff.c2 = haar_value(FormFactorKind::C2, d);
  ff.c3 = haar_value(FormFactorKind::C3, d);
  ff.c4 = haar_value(FormFactorKind::C4, d);
  ff.c2_2t = 2.0;  // Haar average of |tr U^2|^2
  return ff;
}

double equilibration_time(const TimeSeries& series, double level, double band) {
  if (series.t.size() != series.value.size() || series.t.empty())
    throw std::invalid_argument("equilibration_time: malformed series");
  int last_outside = -1;
  for (int i = 0; i < static_cast<int>(series.t.size()); ++i)
    if (std::fabs(series.value[i] - level) > band) last_outside = i;
  if (last_outside < 0) return 0.0;
  if (last_outside + 1 >= static_cast<int>(series.t.size()))
    return std::numeric_limits<double>::infinity();  // never converged in window
  return series.t[last_outside + 1];
}

std::vector<double> log_time_grid(double t_min, double t_max, int n) {
  if (t_min <= 0.0 || t_max <= t_min || n < 2)
    throw std::invalid_argument("log_time_grid: need 0 < t_min < t_max, n >= 2");
  std::vector<double> grid(n);
  const double step = std::log(t_max / t_min) / (n - 1);
  for (int i = 0; i < n; ++i) grid[i] = t_min * std::exp(step * i);
  grid.back() = t_max;
  return grid;
}

double fluctuation_decay_time(const TimeSeries& series, double threshold) {
  const std::size_t n = series.value.size();
  if (n < 8 || series.t.size() != n) {
    throw std::invalid_argument("fluctuation_decay_time: need >= 8 points");
  }
  const std::size_t tail = n - n / 8;
  double late = 0.0;
  for (std::size_t i = tail; i < n; ++i) late += series.value[i];
  late /= static_cast<double>(n - tail);
  double scale = 0.0;
  for (double v : series.value) scale = std::max(scale, std::abs(v - late));
  if (scale == 0.0) return series.t.front();
  for (std::size_t i = n; i-- > 0;) {
    if (std::abs(series.value[i] - late) > threshold * scale)
      return series.t[i];
  }
  return series.t.front();
}

std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("linear_fit: need >= 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("linear_fit: degenerate x");
  const double b = (n * sxy - sx * sy) / denom;
  return {(sy - b * sx) / n, b};
}

}  // namespace itw
