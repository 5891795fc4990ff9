#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "itw/ensembles.hpp"
#include "itw/formfactors.hpp"
#include "itw/twirl.hpp"

using namespace itw;

namespace {

FormFactors t0_inputs(int d) {
  FormFactors ff;
  ff.d = d;
  double dd = d;
  ff.c2 = dd * dd;
  ff.c3 = dd * dd * dd;
  ff.c4 = dd * dd * dd * dd;
  ff.c2_2t = dd * dd;
  return ff;
}

}  // namespace

TEST_CASE("r2 coefficient map") {
  int d = 5;
  auto e = Permutation::identity(2);
  auto swap2 = perm_from_cycles(2, {{1, 2}});

  TwirlOperator at0 = r2(t0_inputs(d));
  CHECK(std::abs(at0.coeff_of(e) - 1.0) < 1e-14);
  CHECK(std::abs(at0.coeff_of(swap2)) < 1e-14);

  FormFactors asym = asymptotic_form_factors(d);
  TwirlOperator late = r2(asym);
  CHECK(std::abs(late.coeff_of(e) - 1.0 / (d + 1)) < 1e-14);
  CHECK(std::abs(late.coeff_of(swap2) - 1.0 / (d + 1)) < 1e-14);

  FormFactors haar = haar_form_factors(d);
  TwirlOperator h = r2(haar);
  CHECK(std::abs(h.coeff_of(e)) < 1e-14);
  CHECK(std::abs(h.coeff_of(swap2) - 1.0 / d) < 1e-14);
}

TEST_CASE("r4 forced limits") {
  for (int d : {4, 8}) {
    double dd = d;
    TwirlOperator at0 = r4(t0_inputs(d));
    for (size_t i = 0; i < at0.elements.size(); ++i) {
      double want = at0.elements[i].is_identity() ? 1.0 : 0.0;
      CHECK(std::abs(at0.coeffs[i] - want) < 1e-10);
    }

    TwirlOperator late = r4(asymptotic_form_factors(d));
    double id_want =
        (2 * dd * dd + 7 * dd + 4) / (dd * (dd + 1) * (dd + 2) * (dd + 3));
    CHECK(std::abs(late.coeff_of(Permutation::identity(4)) - id_want) <
          1e-12);

    TwirlOperator h = r4(haar_form_factors(d));
    TwirlOperator limit = haar_twirl_limit(2, d);
    for (size_t i = 0; i < h.elements.size(); ++i) {
      CHECK(std::abs(h.coeffs[i] - limit.coeff_of(h.elements[i])) < 1e-12);
    }
    // Only the Y_{(2)(2)} and Y_{(4)}^{(2)} groups survive the Haar inputs.
    CHECK(std::abs(h.coeff_of(perm_from_cycles(4, {{1, 3}, {2, 4}})) -
                   1.0 / (dd * dd - 1)) < 1e-12);
    CHECK(std::abs(h.coeff_of(perm_from_cycles(4, {{1, 4, 2, 3}})) +
                   1.0 / (dd * (dd * dd - 1))) < 1e-12);
  }
  CHECK_THROWS(r4(t0_inputs(3)));
}

TEST_CASE("r2_cp cases") {
  int d = 5;
  auto e = Permutation::identity(2);
  auto swap2 = perm_from_cycles(2, {{1, 2}});

  TwirlOperator deph = r2_cp(CPMapSpec::dephasing(d));
  CHECK(std::abs(deph.coeff_of(e) - 1.0 / (d + 1)) < 1e-14);
  CHECK(std::abs(deph.coeff_of(swap2) - 1.0 / (d + 1)) < 1e-14);

  CPMapSpec unitary{CPMapSpec::Kind::GENERIC, Complex(double(d) * d, 0.0), d};
  TwirlOperator u = r2_cp(unitary);
  CHECK(std::abs(u.coeff_of(e) - 1.0) < 1e-14);
  CHECK(std::abs(u.coeff_of(swap2)) < 1e-14);

  CPMapSpec unit_trace{CPMapSpec::Kind::GENERIC, Complex(1.0, 0.0), d};
  TwirlOperator s = r2_cp(unit_trace);
  CHECK(std::abs(s.coeff_of(e)) < 1e-14);
  CHECK(std::abs(s.coeff_of(swap2) - 1.0 / d) < 1e-14);
}

TEST_CASE("dense realization") {
  TwirlOperator at0 = r2(t0_inputs(3));
  Matrix m0 = to_matrix(at0);
  CHECK((m0 - Matrix::Identity(9, 9)).norm() < 1e-12);

  // Asymptotic r2 at d=2 is (1 + SWAP)/3 = (2/3) * symmetric projector,
  // idempotent up to that scale.
  TwirlOperator late = r2(asymptotic_form_factors(2));
  Matrix m = to_matrix(late);
  CHECK((m * m - (2.0 / 3.0) * m).norm() < 1e-12);

  // Trace of T/d is tr(SWAP)/d = d/d = 1.
  TwirlOperator h1 = haar_twirl_limit(1, 4);
  CHECK(std::abs(to_matrix(h1).trace() - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("hermiticity and twirl symmetry") {
  auto rng = make_rng(77);
  Spectrum sp = sample_spectrum({EnsembleKind::GUE, 4}, rng);
  for (double t : {0.4, 1.3, 5.0}) {
    FormFactors ff = empirical_form_factors(sp, t);
    Matrix m2 = to_matrix(r2(ff));
    CHECK((m2 - m2.adjoint()).norm() < 1e-10);

    // The fourth-moment map is Hermitian once the odd moment enters by its
    // real part; with the full complex c3 the matrix pairs slots asymmetrically.
    FormFactors ffr = ff;
    ffr.c3 = Complex(ff.c3.real(), 0.0);
    Matrix m4 = to_matrix(r4(ffr));
    CHECK((m4 - m4.adjoint()).norm() < 1e-10);

    for (auto cyc : {std::vector<int>{1, 2}, std::vector<int>{3, 4}}) {
      Matrix tp = permutation_matrix(perm_from_cycles(4, {cyc}), 4);
      CHECK((tp * m4 - m4 * tp).norm() < 1e-10);
    }
    Matrix t12 = permutation_matrix(perm_from_cycles(2, {{1, 2}}), 4);
    CHECK((t12 * m2 - m2 * t12).norm() < 1e-10);
  }
}

TEST_CASE("dephasing and hybrid fourth moments at t=0 inputs") {
  int d = 4;
  TwirlOperator deph = r4_dephasing(d);
  TwirlOperator hyb = r4_hybrid(t0_inputs(d));
  // Twirls of Hermitian channel tensors realize as Hermitian matrices.
  for (const TwirlOperator& op : {deph, hyb}) {
    Matrix m = to_matrix(op);
    CHECK((m - m.adjoint()).norm() < 1e-10);
  }
}
