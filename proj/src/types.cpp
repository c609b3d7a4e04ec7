#include "riemannphi/types.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

namespace rphi {

namespace {
unsigned g_digits = 40;
}

unsigned working_digits() { return g_digits; }

void set_working_digits(unsigned digits10) {
    if (digits10 < 10) digits10 = 10;
    g_digits = digits10;
    real::default_precision(digits10);
}

scoped_digits::scoped_digits(unsigned digits10) : saved_(g_digits) {
    if (digits10 > g_digits) {
        g_digits = digits10;
        real::default_precision(digits10);
    }
}

scoped_digits::~scoped_digits() {
    g_digits = saved_;
    real::default_precision(saved_);
}

const real& pi() {
    static real cached;
    static unsigned cached_digits = 0;
    if (cached_digits != g_digits) {
        real p;
        mpfr_const_pi(p.backend().data(), MPFR_RNDN);
        cached = p;
        cached_digits = g_digits;
    }
    return cached;
}

real two_pi() { return 2 * pi(); }

real working_eps() {
    real e = pow(real(10), 1 - static_cast<int>(g_digits));
    return e;
}

real abs(const Complex& z) { return hypot(z.re, z.im); }

Complex operator/(const Complex& a, const Complex& b) {
    real d = norm2(b);
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}

Complex cis(const real& radians) {
    real s, c;
    mpfr_sin_cos(s.backend().data(), c.backend().data(), radians.backend().data(), MPFR_RNDN);
    return Complex(c, s);
}

Complex cis2pi(const real& turns) {
    real u = frac1(turns);
    if (u >= real(0.5)) u -= 1; // keep the trig argument in [-pi, pi)
    return cis(two_pi() * u);
}

Complex cexp(const Complex& z) {
    real m = exp(z.re);
    Complex r = cis(z.im);
    return Complex(m * r.re, m * r.im);
}

real frac1(const real& x) {
    real f = x - floor(x);
    if (f < 0) f += 1;       // guard against rounding at the boundary
    if (f >= 1) f -= 1;
    return f;
}

real frac_mul(const real& x, long long k) {
    // k*x computed with enough extra bits that the fractional part keeps
    // full working accuracy even when |k*x| is large.
    mpfr_prec_t xp = mpfr_get_prec(x.backend().data());
    real prod;
    mpfr_set_prec(prod.backend().data(), xp + 70);
    mpfr_mul_si(prod.backend().data(), x.backend().data(), k, MPFR_RNDN);
    real fl = floor(prod);
    real f = prod - fl;
    if (f < 0) f += 1;
    if (f >= 1) f -= 1;
    real out = f; // rounds back to the ambient precision on use
    return out;
}

Complex inv_sqrt_principal(const Complex& z) {
    real r = abs(z);
    if (r == 0) throw std::domain_error("inv_sqrt_principal: z = 0");
    real theta = atan2(z.im, z.re); // in (-pi, pi], with atan2(0, neg) = +pi
    real m = 1 / sqrt(r);
    Complex rot = cis(-theta / 2);
    return Complex(m * rot.re, m * rot.im);
}

Complex sqrt_signed(const real& t) {
    if (t >= 0) return Complex(sqrt(t), real(0));
    return Complex(real(0), sqrt(-t));
}

Complex cpow(const Complex& z, const real& a) {
    real r = abs(z);
    if (r == 0) throw std::domain_error("cpow: z = 0");
    real theta = atan2(z.im, z.re);
    real lr = a * log(r);
    real m = exp(lr);
    Complex rot = cis(a * theta);
    return Complex(m * rot.re, m * rot.im);
}

std::string fmt(const real& x, unsigned digits) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(static_cast<int>(digits));
    os << x;
    return os.str();
}

} // namespace rphi
