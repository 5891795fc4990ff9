#pragma once

#include <complex>
#include <vector>

#include "itw/ensembles.hpp"

namespace itw {

// Spectral form factors at one time point:
//   c2 = tr(U) tr(U†), c3 = tr(U²) tr(U†)², c4 = tr(U)² tr(U†)², and c2
//   evaluated at 2t; U = exp(-iHt). Ensemble-averaged generators fill c3 with
//   its real part (the only part any probe consumes).
struct FormFactors {
  double t = 0.0;
  std::complex<double> c2{0.0, 0.0};
  std::complex<double> c3{0.0, 0.0};
  std::complex<double> c4{0.0, 0.0};
  std::complex<double> c2_2t{0.0, 0.0};
  int d = 0;

  // Rescaled values c̃_a = c_a / d^a.
  double c2_tilde() const { return c2.real() / (static_cast<double>(d) * d); }
  double c4_tilde() const {
    const double d2 = static_cast<double>(d) * d;
    return c4.real() / (d2 * d2);
  }
};

// Exact form factors of one sampled spectrum; applies sp.time_rescale.
FormFactors empirical_form_factors(const Spectrum& sp, double t);

// GUE ensemble averages (box-approximated sine-kernel closed forms);
// c3 values are the real part.
double gue_c2(int d, double t);
double gue_c3(int d, double t);
double gue_c4(int d, double t);

// GDE ensemble averages (exact Gaussian closed forms).
double gde_c2(int d, double t);
double gde_c3(int d, double t);
double gde_c4(int d, double t);

// Nearest-level-spacing ensemble averages, kind in {POISSON, WD_GOE, WD_GUE}.
// t is on the common display axis; the 1/d level-density rescaling is applied
// internally (matching Spectrum.time_rescale for empirical curves). O(d) per
// evaluation via geometric-sum recurrences.
double nls_c2(EnsembleKind kind, int d, double t);
std::complex<double> nls_c3(EnsembleKind kind, int d, double t);
double nls_c4(EnsembleKind kind, int d, double t);

// Smooth non-oscillatory envelopes of the rescaled form factors,
// kind in {POISSON, GUE}.
double envelope_c2(EnsembleKind kind, int d, double t);
double envelope_c4(EnsembleKind kind, int d, double t);

enum class FormFactorKind { C2, C3, C4 };

// Infinite-time averages (ensemble independent): c2 -> d, Re c3 -> d,
// c4 -> d(2d-1).
double asymptotic_value(FormFactorKind which, int d);
// Haar averages of the unrescaled c's: c2 -> 1, Re c3 -> 0, c4 -> 2.
double haar_value(FormFactorKind which, int d);

// Convenience bundles feeding the twirl/probe layer.
FormFactors analytic_form_factors(EnsembleKind kind, int d, double t);
FormFactors asymptotic_form_factors(int d);
FormFactors haar_form_factors(int d);

// A sampled time series (grid strictly increasing).
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> value;
};

// First time after which the series stays within `band` of `level` for the
// remainder of the sampled window; 0 if it never leaves, +inf sentinel if it
// is still outside at the window's end.
double equilibration_time(const TimeSeries& series, double level, double band);

// Logarithmic time grid of n points on [t_min, t_max].
std::vector<double> log_time_grid(double t_min, double t_max, int n);

// Last time at which the series still deviates from its late-window mean by
// more than `threshold` times the largest excursion; t.front() if it never
// does (e.g. a constant series).
double fluctuation_decay_time(const TimeSeries& series, double threshold);

// Least-squares fit y = a + b x.
std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y);

}  // namespace itw
