#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riemannphi/numtheory.hpp"

#include <numeric>
#include <set>

using namespace rphi;

namespace {

double dbl(const real& x) { return x.convert_to<double>(); }

// exhaustive quadratic-residue table: the textbook definition of the symbol
// for prime-free checks at small odd q
int legendre_style_oracle(long long p, long long q) {
    long long a = ((p % q) + q) % q;
    if (std::gcd(a, q) != 1) return 0;
    std::set<long long> squares;
    for (long long j = 0; j < q; ++j) squares.insert(j * j % q);
    return squares.count(a) ? 1 : -1;
}

} // namespace

TEST_CASE("jacobi symbol examples and errors") {
    set_working_digits(30);
    CHECK(jacobi_symbol(1, 3) == 1);
    CHECK(jacobi_symbol(2, 3) == -1);
    CHECK(jacobi_symbol(2, 15) == 1);
    CHECK(jacobi_symbol(0, 3) == 0);
    CHECK(jacobi_symbol(6, 9) == 0);
    CHECK(jacobi_symbol(-1, 3) == -1); // -1 = 2 mod 3, a non-residue
    CHECK_THROWS_AS(jacobi_symbol(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_symbol(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_symbol(1, -5), std::invalid_argument);
}

TEST_CASE("jacobi symbol vs residue oracle at odd primes") {
    for (long long q : {3, 5, 7, 11, 13, 17, 19, 23}) {
        for (long long p = 0; p < q; ++p) {
            CHECK(jacobi_symbol(p, q) == legendre_style_oracle(p, q));
        }
    }
}

TEST_CASE("jacobi symbol multiplicativity in p") {
    for (long long q : {9, 15, 21, 35, 45}) {
        for (long long p1 = 1; p1 < 12; ++p1) {
            for (long long p2 = 1; p2 < 12; ++p2) {
                CHECK(jacobi_symbol(p1 * p2, q) == jacobi_symbol(p1, q) * jacobi_symbol(p2, q));
            }
        }
    }
}

TEST_CASE("epsilon factor") {
    CHECK(epsilon_factor(1).re == 1);
    CHECK(epsilon_factor(1).im == 0);
    CHECK(epsilon_factor(3).re == 0);
    CHECK(epsilon_factor(3).im == 1);
    CHECK(epsilon_factor(5).re == 1);
    CHECK_THROWS_AS(epsilon_factor(2), std::invalid_argument);
}

TEST_CASE("closed-form Gauss sums: pinned examples") {
    set_working_digits(30);
    {
        GaussSumValue s = gauss_sum_closed(1, 1);
        CHECK(s.a == 1);
        CHECK(s.b == 0);
    }
    {
        GaussSumValue s = gauss_sum_closed(3, 1); // i sqrt(3)
        CHECK(s.a == 0);
        CHECK(s.b == 1);
        CHECK(dbl(abs(s.to_complex() - Complex(real(0), sqrt(real(3))))) < 1e-25);
    }
    {
        GaussSumValue s = gauss_sum_closed(2, 1);
        CHECK(s.is_zero());
        CHECK(s.branch == GaussSumValue::Branch::q2mod4);
    }
    {
        GaussSumValue s = gauss_sum_closed(4, 1); // 2 + 2i
        CHECK(s.a == 1);
        CHECK(s.b == 1);
        CHECK(dbl(abs(s.to_complex() - Complex(real(2), real(2)))) < 1e-25);
    }
    {
        GaussSumValue s = gauss_sum_closed(5, 2); // -sqrt(5)
        CHECK(s.a == -1);
        CHECK(s.b == 0);
    }
    CHECK_THROWS_AS(gauss_sum_closed(6, 2), std::invalid_argument);
    CHECK_THROWS_AS(gauss_sum_closed(0, 1), std::invalid_argument);
}

TEST_CASE("brute-force sums match the closed form, q <= 120") {
    set_working_digits(25);
    for (long long q = 1; q <= 120; ++q) {
        auto table = detail::unit_root_table(q);
        GaussSumValue closed_any;
        for (long long p = 1; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            GaussSumValue s = gauss_sum_closed(q, p);
            auto brute = detail::gauss_sum_brute_tab(q, p, 0, table);
            CHECK(dbl(abs(s.to_complex() - brute.value)) < 1e-9);
            // |S|^2 in {0, q, 2q} exactly
            cpp_int a2 = s.abs_squared();
            bool ok = a2 == 0 || a2 == q || a2 == 2 * q;
            CHECK(ok);
            if (q % 4 == 2) CHECK(s.is_zero());
        }
    }
}

TEST_CASE("generalized sums: pinned examples") {
    set_working_digits(30);
    {
        GeneralGaussSum s = gauss_sum_general(3, 1, 0); // = S(3,1) = i sqrt(3)
        CHECK(dbl(abs(s.value - Complex(real(0), sqrt(real(3))))) < 1e-25);
    }
    {
        GeneralGaussSum s = gauss_sum_general(3, 1, 1); // 3/2 - (sqrt(3)/2) i
        Complex want(real(3) / 2, -sqrt(real(3)) / 2);
        CHECK(dbl(abs(s.value - want)) < 1e-25);
        auto brute = gauss_sum_general_brute(3, 1, 1);
        CHECK(dbl(abs(s.value - brute.value)) < 1e-20);
    }
    {
        GeneralGaussSum s = gauss_sum_general(2, 1, 1); // exactly 2
        CHECK(dbl(abs(s.value - Complex(real(2), real(0)))) < 1e-25);
        auto brute = gauss_sum_general_brute(2, 1, 1);
        CHECK(dbl(abs(brute.value - Complex(real(2), real(0)))) < 1e-20);
    }
    {
        GeneralGaussSum s = gauss_sum_general(4, 1, 1); // exact zero branch
        CHECK(s.reduction == GeneralGaussSum::Reduction::zero);
        CHECK(dbl(abs(s.value)) == 0.0);
    }
    {
        // q = 2 mod 4 with p != 1: exercises the inverse mod 4q in the phase
        GeneralGaussSum s = gauss_sum_general(2, 3, 1);
        auto brute = gauss_sum_general_brute(2, 3, 1);
        CHECK(dbl(abs(s.value - brute.value)) < 1e-20);
    }
    CHECK_THROWS_AS(gauss_sum_general(6, 3, 1), std::invalid_argument);
}

TEST_CASE("generalized sums vs brute force, q <= 60, all m") {
    set_working_digits(25);
    for (long long q = 1; q <= 60; ++q) {
        auto table = detail::unit_root_table(q);
        for (long long p = 1; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            for (long long m = 0; m < q; ++m) {
                GeneralGaussSum s = gauss_sum_general(q, p, m);
                auto brute = detail::gauss_sum_brute_tab(q, p, m, table);
                CHECK(dbl(abs(s.value - brute.value)) < 1e-9);
            }
        }
    }
}

TEST_CASE("generalized sums are q-periodic in m") {
    set_working_digits(25);
    for (long long q : {3, 4, 6, 10, 12, 15}) {
        for (long long p = 1; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            for (long long m = 0; m < q; ++m) {
                GeneralGaussSum a = gauss_sum_general(q, p, m);
                GeneralGaussSum b = gauss_sum_general(q, p, m + q);
                CHECK(dbl(abs(a.value - b.value)) < 1e-20);
            }
        }
    }
}

TEST_CASE("p is normalized into [1, q] before evaluation") {
    set_working_digits(30);
    GaussSumValue a = gauss_sum_closed(5, -3);
    GaussSumValue b = gauss_sum_closed(5, 2);
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
    GeneralGaussSum g1 = gauss_sum_general(7, 10, -2);
    GeneralGaussSum g2 = gauss_sum_general(7, 3, 5);
    CHECK(dbl(abs(g1.value - g2.value)) < 1e-25);
}

TEST_CASE("rational reduces on construction") {
    Rational r(cpp_int(6), cpp_int(-4));
    CHECK(r.p == -3);
    CHECK(r.q == 2);
    CHECK_THROWS_AS(Rational(cpp_int(1), cpp_int(0)), std::invalid_argument);
}
