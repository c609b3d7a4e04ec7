#pragma once

#include "riemannphi/types.hpp"

#include <span>
#include <vector>

namespace rphi {

// Reduced fraction p/q with q >= 1.
struct Rational {
    cpp_int p;
    cpp_int q;

    Rational() : p(0), q(1) {}
    Rational(cpp_int num, cpp_int den);

    real to_real() const;
    bool operator==(const Rational& o) const { return p == o.p && q == o.q; }
};

struct GaussianInt {
    int re = 0, im = 0;
};

int jacobi_symbol(const cpp_int& p, const cpp_int& q);
// eps_n = 1 for n = 1 mod 4, i for n = 3 mod 4; rejects even n.
GaussianInt epsilon_factor(const cpp_int& n);
cpp_int mod_inverse(const cpp_int& a, const cpp_int& modulus);

// S(q,p) in exact form: (a + b i) * sqrt(q) with a, b in {-1, 0, 1}.
struct GaussSumValue {
    int a = 0, b = 0;
    cpp_int q = 1;
    enum class Branch { odd_q, q2mod4, q0mod4 } branch = Branch::odd_q;

    bool is_zero() const { return a == 0 && b == 0; }
    cpp_int abs_squared() const { return (cpp_int(a) * a + cpp_int(b) * b) * q; }
    Complex to_complex() const;
    std::string exact_string() const;
};

GaussSumValue gauss_sum_closed(const cpp_int& q, const cpp_int& p);

struct ComplexWithError {
    Complex value;
    real est_error;
};

ComplexWithError gauss_sum_brute(long long q, long long p);

// S(q,p,m) reduced to a root of unity times a closed-form Gauss sum.
struct GeneralGaussSum {
    Complex value;
    real est_error;
    enum class Reduction { shift, odd_residues, zero } reduction = Reduction::shift;
    // value = e(-rot_num/rot_den) * to_complex(base) / scale  (scale is 1 or 2)
    cpp_int rot_num = 0, rot_den = 1;
    int scale = 1;
    GaussSumValue base;
};

GeneralGaussSum gauss_sum_general(const cpp_int& q, const cpp_int& p, const cpp_int& m);
ComplexWithError gauss_sum_general_brute(long long q, long long p, long long m);

namespace detail {
// e(j/q) for j = 0..q-1; shared by the brute-force sweeps.
std::vector<Complex> unit_root_table(long long q);
ComplexWithError gauss_sum_brute_tab(long long q, long long p, long long m,
                                     std::span<const Complex> table);
} // namespace detail

} // namespace rphi
