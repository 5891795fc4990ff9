#pragma once

namespace itw {

// Bessel function of the first kind, order 1. Ascending series below |x|=12,
// Hankel asymptotic expansion above; ~1e-12 relative accuracy.
double bessel_j1(double x);

// Dawson's integral D(x) = exp(-x^2) ∫_0^x exp(u^2) du. Maclaurin series for
// |x| < 3; beyond that the exponentially convergent Gaussian-comb
// representation (step h = 0.2), good to ~1e-15 for all real x.
double dawson(double x);

// Sine-kernel ingredients of the GUE form-factor closed forms:
//   r1(t) = J1(2t)/t (r1(0)=1), r2(t) = theta(2d-t)(d-t/2),
//   r3(t) = sin(pi t/2)/(pi t/2) (r3(0)=1).
double sk_r1(double t);
double sk_r2(double d, double t);
double sk_r3(double t);

}  // namespace itw
