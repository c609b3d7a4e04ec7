#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riemannphi/phi.hpp"

#include <random>

using namespace rphi;

namespace {

double dbl(const real& x) { return x.convert_to<double>(); }

real uniform01(std::mt19937_64& rng) {
    return real(static_cast<double>(rng() >> 11) * 0x1p-53);
}

} // namespace

TEST_CASE("phi(0) = -i pi / 12") {
    set_working_digits(40);
    PhiValue v = phi_series(Complex(real(0), real(0)), real("2e-8"));
    real want = -pi() / 12; // zeta(2) / (2 pi), rotated to the negative imaginary axis
    CHECK(std::abs(dbl(v.value.im) - dbl(want)) < 3e-8);
    CHECK(std::abs(dbl(v.value.re)) < 1e-12); // the sine series vanishes at 0
}

TEST_CASE("phi(i) is its first term to nine digits") {
    set_working_digits(40);
    PhiValue v = phi_series(Complex(real(0), real(1)), real("1e-14"));
    Complex first = Complex(exp(-two_pi()), real(0)) / Complex(real(0), two_pi());
    Complex second = Complex(exp(-8 * pi()), real(0)) / Complex(real(0), 8 * pi());
    CHECK(dbl(abs(v.value - first)) < 1e-9);
    CHECK(dbl(abs(v.value - first - second)) < 1e-13);
}

TEST_CASE("series error bound is honored between tolerance levels") {
    set_working_digits(40);
    real x("0.4375911");
    PhiValue coarse = phi_series(Complex(x, real(0)), real("1e-5"));
    PhiValue fine = phi_series(Complex(x, real(0)), real("2e-9"));
    CHECK(dbl(abs(coarse.value - fine.value)) < dbl(coarse.est_error + fine.est_error));
}

TEST_CASE("double-double and mpfr summation paths agree") {
    set_working_digits(40);
    real x = real(1) / 3 + real("1e-5");
    PhiValue fast = phi_series(Complex(x, real(0)), real("1e-6"));   // N ~ 1.6e5: dd path
    PhiValue slow = phi_series(Complex(x, real(0)), real("1e-4"));   // N ~ 1.6e3: mpfr path
    CHECK(fast.terms_used > 100000);
    CHECK(slow.terms_used < 4000);
    CHECK(dbl(abs(fast.value - slow.value)) < dbl(fast.est_error + slow.est_error));
}

TEST_CASE("series cap reported as unreachable tolerance") {
    set_working_digits(40);
    CHECK_THROWS_AS(phi_series(Complex(real("0.3"), real(0)), real("1e-12")), convergence_error);
}

TEST_CASE("contour increment at x = 1/2 is close to -h/2") {
    set_working_digits(40);
    PhiIncrement inc = phi_increment_contour(real(1) / 2, real("1e-4"), real("1e-9"));
    CHECK(dbl(abs(inc.value + Complex(real("5e-5"), real(0)))) < 3e-6);
}

TEST_CASE("contour vs series oracle at the golden ratio") {
    set_working_digits(40);
    real gold("0.6180339887498948482045868343656381177203");
    PhiIncrement c = phi_increment_contour(gold, real("1e-3"), real("1e-9"));
    PhiIncrement s = phi_increment_series(gold, real("1e-3"), real("1.5915e-8"));
    CHECK(dbl(abs(c.value - s.value)) < 1e-7 + dbl(s.est_error));
}

TEST_CASE("increments at x = 0: signed square-root structure") {
    set_working_digits(40);
    // at p/q = 0/1 (row q = 1 mod 4): Re inc ~ +sqrt(h)/2 right, -sqrt|h|/2 left
    real h0("1e-6");
    PhiIncrement right = phi_increment_contour(real(0), h0, real("1e-11"));
    PhiIncrement left = phi_increment_contour(real(0), -h0, real("1e-11"));
    CHECK(dbl(fabs(right.value.re - (sqrt(h0) / 2 - h0 / 2))) < 1e-8);
    CHECK(dbl(fabs(left.value.re - (-sqrt(h0) / 2 - (-h0) / 2))) < 1e-8);
}

TEST_CASE("series increment at 1/3 reproduces the leading Re coefficient") {
    set_working_digits(40);
    real h("1e-4");
    PhiIncrement s = phi_increment_series(real(1) / 3, h, real("4e-9"));
    real want = -sqrt(h) / (2 * sqrt(real(3)));
    CHECK(std::abs(dbl(s.value.re) / dbl(want) - 1.0) < 0.02);
    PhiIncrement sm = phi_increment_series(real(1) / 3, -h, real("4e-9"));
    real wantm = -sqrt(h) / (2 * sqrt(real(3)));
    CHECK(std::abs(dbl(sm.value.re) / dbl(wantm) - 1.0) < 0.02);
}

TEST_CASE("contour and series agree on random increments") {
    set_working_digits(40);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 6; ++i) {
        real x = uniform01(rng);
        real lg = uniform01(rng) * 3; // |h| in [1e-5, 1e-2]
        real h = pow(real(10), -2 - lg);
        if (rng() & 1) h = -h;
        PhiIncrement c = phi_increment_contour(x, h, real("1e-9"));
        PhiIncrement s = phi_increment_series(x, h, real("1.5915e-8"));
        CHECK(dbl(abs(c.value - s.value)) < dbl(c.est_error + s.est_error));
    }
}

TEST_CASE("path independence: doubling the rectangle height") {
    set_working_digits(40);
    real x("0.3141592653589793");
    real h("1e-3");
    PhiIncrement a = phi_increment_contour(x, h, real("1e-9"));
    PhiIncrement b = detail::phi_increment_contour_height(x, h, 2 * fabs(h), real("1e-9"));
    CHECK(dbl(abs(a.value - b.value)) < dbl(a.est_error + b.est_error));
}

TEST_CASE("increment composition") {
    set_working_digits(40);
    real x("0.2137");
    real h1("1.3e-3"), h2("0.7e-3");
    PhiIncrement whole = phi_increment_contour(x, h1 + h2, real("1e-9"));
    PhiIncrement first = phi_increment_contour(x, h1, real("1e-9"));
    PhiIncrement second = phi_increment_contour(x + h1, h2, real("1e-9"));
    CHECK(dbl(abs(whole.value - first.value - second.value)) <
          dbl(whole.est_error + first.est_error + second.est_error));
}

TEST_CASE("derivative identity residuals") {
    set_working_digits(40);
    real r1 = phi_derivative_identity_check(UpperHalfPoint{real("0.3"), real("0.1")}, real("1e-5"));
    CHECK(dbl(r1) < 1e-6);
    real r2 = phi_derivative_identity_check(UpperHalfPoint{real(0), real(1)}, real("1e-4"));
    CHECK(dbl(r2) < 1e-7);
    real r3 = phi_derivative_identity_check(UpperHalfPoint{real("1.3"), real("0.1")}, real("1e-5"));
    CHECK(std::abs(dbl(r3) - dbl(r1)) < 1e-9); // periodicity
}

TEST_CASE("contour argument validation and precision gate") {
    set_working_digits(40);
    CHECK_THROWS_AS(phi_increment_contour(real(0), real(0), real("1e-9")), std::invalid_argument);
    CHECK_THROWS_AS(phi_increment_contour(real(0), real("0.7"), real("1e-9")), std::invalid_argument);
    set_working_digits(20);
    CHECK_THROWS_AS(phi_increment_contour(real(0), real("1e-7"), real("1e-12")), precision_error);
    set_working_digits(40);
}

TEST_CASE("riemann f values") {
    set_working_digits(40);
    RealWithError f0 = riemann_f(real(0), real("2e-8"));
    CHECK(std::abs(dbl(f0.value)) < 1e-7);
    RealWithError f1 = riemann_f(real(1), real("2e-8"));
    CHECK(std::abs(dbl(f1.value)) < 1e-7);
    // f(1/2) = sum over odd n of 1/n^2 = pi^2 / 8 (n^2 = 1 mod 8 for odd n)
    RealWithError fh = riemann_f(real(1) / 2, real("1e-7"));
    real want = pi() * pi() / 8;
    CHECK(std::abs(dbl(fh.value) - dbl(want)) < 1e-6);
}
