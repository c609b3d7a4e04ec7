#pragma once

#include "riemannphi/numtheory.hpp"
#include "riemannphi/types.hpp"

#include <vector>

namespace rphi {

enum class TableRow { q1, q3, q2, q0_p1, q0_p3 };

// The local expansion data of phi at p/q:
//   phi(p/q + h) - phi(p/q) = C^- |h|_-^{1/2} + C^+ |h|_+^{1/2} - h/2 + R_{q,p}(h)
struct RationalExpansion {
    Rational at;
    GaussSumValue S;
    Complex c_minus, c_plus;
    bool differentiable_phi = false;
    TableRow row = TableRow::q1;
    real re_coeff_left, re_coeff_right; // signed leading sqrt coefficients of Re, 0 when absent
};

RationalExpansion expansion_constants(const cpp_int& p, const cpp_int& q);

// Row of the Re-behavior table plus the signed leading coefficients (left, right).
struct ReBehavior {
    TableRow row;
    real coeff_left, coeff_right;
};
ReBehavior classify_re_behavior(const cpp_int& p, const cpp_int& q);

// f is differentiable at p/q iff p and q are both odd.
bool is_differentiable_f(const cpp_int& p, const cpp_int& q);

struct TwistedPhi {
    cpp_int q, p;
    int k = 0; // primitive order
};

// phi_{q,p}^{(-k)}(x) = sum_m S(q,p,m) e(m^2 x) / (2 pi i m^2)^{k+1},
// evaluated through the exact reduction to plain phi (and its primitives).
ComplexWithError twisted_phi_eval(const TwistedPhi& t, const real& x, const real& tol);
// Term-by-term summation of the defining series; test oracle.
ComplexWithError twisted_phi_eval_brute(const TwistedPhi& t, const real& x, long long terms);
// sup-norm bound sqrt(2q) zeta(2k+2) / (2 pi)^{k+1}
real twisted_phi_sup_bound(const TwistedPhi& t);

// R_{q,p}(h), 0 < |h| <= 0.1
ComplexWithError remainder_term(const cpp_int& p, const cpp_int& q, const real& h, const real& tol);

// a_k = (-1)^k 4^{k+1} prod_{j=1..k} (j + 1/2)
real a_coefficient(int k);

struct AsymptoticExpansion {
    std::vector<Complex> terms; // k = 0..K
    Complex integral_tail;
    Complex total;             // sum of terms + integral_tail
    real est_error;
};

AsymptoticExpansion asymptotic_terms(const cpp_int& p, const cpp_int& q, const real& h, int K,
                                     const real& tol);

namespace detail {
// E(nu, s0) = int_{s0}^infty s^{-nu} e^{-2 pi i s} ds, via rotation into the
// lower half-plane where the integrand decays like e^{-2 pi v}.
ComplexWithError exp_tail_integral(const real& nu, const real& s0, const real& tol);
// Loose-tolerance direct quadrature of the remainder chirp integral
// int_0^h t^{1/2} phi_{q,p}(-1/(4 q^2 t)) dt; test oracle.
ComplexWithError remainder_chirp_integral_brute(const cpp_int& p, const cpp_int& q, const real& h,
                                                const real& tol);
} // namespace detail

} // namespace rphi
