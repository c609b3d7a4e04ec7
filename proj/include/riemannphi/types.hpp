#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rphi {

namespace mp = boost::multiprecision;

// Working real type. Precision is process-wide, set once per run (or raised
// temporarily with scoped_digits); all operands of an expression should carry
// the same precision.
using real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using mp::cpp_int;
using mp::cpp_rational;

unsigned working_digits();
void set_working_digits(unsigned digits10);

// RAII precision raise; never lowers below the surrounding setting.
class scoped_digits {
public:
    explicit scoped_digits(unsigned digits10);
    ~scoped_digits();
    scoped_digits(const scoped_digits&) = delete;
    scoped_digits& operator=(const scoped_digits&) = delete;

private:
    unsigned saved_;
};

const real& pi();   // cached per precision
real two_pi();
real working_eps(); // 10^(1 - working_digits)

struct precision_error : std::runtime_error {
    unsigned needed_digits;
    precision_error(const std::string& msg, unsigned needed)
        : std::runtime_error(msg), needed_digits(needed) {}
};

struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct series_not_effective : std::runtime_error {
    long long needed_terms;
    series_not_effective(const std::string& msg, long long needed)
        : std::runtime_error(msg), needed_terms(needed) {}
};

struct Complex {
    real re, im;

    Complex() : re(0), im(0) {}
    Complex(const real& r) : re(r), im(0) {}
    Complex(const real& r, const real& i) : re(r), im(i) {}
    Complex(long long r) : re(r), im(0) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        real t = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = t;
        return *this;
    }
    Complex& operator*=(const real& s) { re *= s; im *= s; return *this; }
    Complex& operator/=(const real& s) { re /= s; im /= s; return *this; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const real& s) { return a *= s; }
inline Complex operator*(const real& s, Complex a) { return a *= s; }
inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }

real abs(const Complex& z);
Complex operator/(const Complex& a, const Complex& b);
inline Complex operator/(Complex a, const real& s) { return a /= s; }

// exp(2*pi*i*turns); the argument is reduced mod 1 before any trigonometry.
Complex cis2pi(const real& turns);
// exp(i*radians), |radians| assumed moderate.
Complex cis(const real& radians);
// exp(z)
Complex cexp(const Complex& z);
// x - floor(x), in [0, 1)
real frac1(const real& x);
// frac1(k * x), with the product carried at elevated precision
real frac_mul(const real& x, long long k);
// z^{-1/2} via the principal branch, arg(z) in (-pi, pi]
Complex inv_sqrt_principal(const Complex& z);
// t^{1/2} on the reals with the upper-half-plane convention i*sqrt|t| for t < 0
Complex sqrt_signed(const real& t);
// principal z^a for real exponent a, z != 0
Complex cpow(const Complex& z, const real& a);

// Deterministic scientific-notation formatting.
std::string fmt(const real& x, unsigned digits);

} // namespace rphi
