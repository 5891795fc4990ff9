#include "itw/special.hpp"

#include <cmath>

namespace itw {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
}  // namespace

double bessel_j1(double x) {
  const double ax = std::fabs(x);
  double result;
  if (ax < 12.0) {
    // J1(x) = (x/2) sum_k (-x^2/4)^k / (k! (k+1)!)
    const double q = -0.25 * ax * ax;
    double term = 0.5 * ax;
    double sum = term;
    for (int k = 1; k < 60; ++k) {
      term *= q / (static_cast<double>(k) * (k + 1));
      sum += term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    result = sum;
  } else {
    // Hankel expansion with mu = 4: J1 = sqrt(2/(pi x)) (P cos w - Q sin w),
    // w = x - 3 pi/4; a_k = prod_{j<=k} (mu - (2j-1)^2) / (k! (8x)^k).
    const double mu = 4.0;
    double p = 1.0, q = 0.0;
    double a = 1.0;
    const double inv8x = 1.0 / (8.0 * ax);
    for (int k = 1; k < 40; ++k) {
      const double f = 2.0 * k - 1.0;
      a *= (mu - f * f) * inv8x / k;
      if (k % 2 == 1)
        q += (k % 4 == 1) ? a : -a;
      else
        p += (k % 4 == 2) ? -a : a;
      if (std::fabs(a) < 1e-17) break;
    }
    const double w = ax - 0.75 * kPi;
    result = std::sqrt(2.0 / (kPi * ax)) * (p * std::cos(w) - q * std::sin(w));
  }
  return x < 0.0 ? -result : result;
}

double dawson(double x) {
  const double ax = std::fabs(x);
  double result;
  if (ax < 3.0) {
    // D(x) = sum_k (-1)^k (2x^2)^k x / (2k+1)!!
    const double q = 2.0 * ax * ax;
    double term = ax;
    double sum = term;
    for (int k = 0; k < 80; ++k) {
      term *= -q / (2.0 * k + 3.0);
      sum += term;
      if (std::fabs(term) < 1e-18 * (std::fabs(sum) + 1e-30)) break;
    }
    result = sum;
  } else {
    // Gaussian comb: D(x) ~ (1/sqrt(pi)) sum_{n odd} exp(-(x-nh)^2)/n,
    // truncation error O(exp(-(pi/2h)^2)) ~ 1e-27 at h = 0.2.
    const double h = 0.2;
    const int n0 = static_cast<int>(std::floor((ax - 7.5) / h));
    const int n1 = static_cast<int>(std::ceil((ax + 7.5) / h));
    double sum = 0.0;
    for (int n = n0 | 1; n <= n1; n += 2) {
      const double u = ax - n * h;
      sum += std::exp(-u * u) / n;
    }
    result = sum / kSqrtPi;
  }
  return x < 0.0 ? -result : result;
}

double sk_r1(double t) {
  if (std::fabs(t) < 1e-8) {
    const double u = t * t;
    return 1.0 - 0.5 * u;  // J1(2t)/t = 1 - t^2/2 + t^4/12 - ...
  }
  return bessel_j1(2.0 * t) / t;
}

double sk_r2(double d, double t) {
  return t >= 2.0 * d ? 0.0 : d - 0.5 * t;
}

double sk_r3(double t) {
  const double u = 0.5 * kPi * t;
  if (std::fabs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

}  // namespace itw
