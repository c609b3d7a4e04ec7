#include "riemannphi/local.hpp"

#include "riemannphi/phi.hpp"
#include "riemannphi/quadrature.hpp"

#include <mpfr.h>

#include <algorithm>

namespace rphi {

namespace {

cpp_int normalize_residue(const cpp_int& p, const cpp_int& q) {
    cpp_int r = p % q;
    if (r < 0) r += q;
    if (r == 0) r = q;
    return r;
}

long long to_ll(const real& x) {
    return static_cast<long long>(mpfr_get_d(x.backend().data(), MPFR_RNDN));
}

real zeta_even(int s) {
    real z;
    mpfr_zeta_ui(z.backend().data(), static_cast<unsigned long>(s), MPFR_RNDN);
    return z;
}

// (-i)^{k+1} as an exact unit; 1/(2 pi i m^2)^{k+1} = unit / (2 pi m^2)^{k+1}
Complex inv_i_power(int k1) {
    switch (((k1 % 4) + 4) % 4) {
    case 0: return Complex(real(1), real(0));
    case 1: return Complex(real(0), real(-1));
    case 2: return Complex(real(-1), real(0));
    default: return Complex(real(0), real(1));
    }
}

// Phi_k(w) = sum_m e(m^2 w) / (2 pi i m^2)^{k+1}  (plain phi and its primitives)
ComplexWithError phi_primitive(int k, const real& w, const real& tol) {
    real wr = frac1(w);
    if (k == 0) {
        PhiValue v = phi_series(Complex(wr, real(0)), tol);
        return ComplexWithError{v.value, v.est_error};
    }
    real p2 = pow(two_pi(), k + 1);
    real mf = pow(1 / (p2 * (2 * k + 1) * tol), real(1) / (2 * k + 1));
    long long M = std::max<long long>(1, to_ll(ceil(mf)) + 1);
    Complex unit = inv_i_power(k + 1);
    Complex sum;
    for (long long m = 1; m <= M; ++m) {
        Complex rot = cis2pi(frac_mul(wr, m * m));
        real denom = pow(two_pi() * real(m) * real(m), k + 1);
        sum += rot / denom;
    }
    real tail = 1 / (p2 * (2 * k + 1) * pow(real(M), 2 * k + 1));
    return ComplexWithError{unit * sum, tail + (6 * real(M) + 10) * working_eps()};
}

} // namespace

RationalExpansion expansion_constants(const cpp_int& p_in, const cpp_int& q) {
    if (q < 1) throw std::invalid_argument("expansion_constants: q must be >= 1");
    cpp_int p = normalize_residue(p_in, q);
    if (gcd(p, q) != 1) throw std::invalid_argument("expansion_constants: gcd(p, q) != 1");

    RationalExpansion out;
    out.at = Rational(p_in, q);
    out.S = gauss_sum_closed(q, p);
    real inv = 1 / (real(q) * sqrt(real(2)));
    Complex Sc = out.S.to_complex();
    out.c_minus = cis(3 * pi() / 4) * Sc * inv;
    out.c_plus = cis(pi() / 4) * Sc * inv;
    out.differentiable_phi = q % 4 == 2;

    real rq = sqrt(real(q));
    cpp_int qm4 = q % 4;
    if (qm4 == 1) {
        out.row = TableRow::q1;
        int j = jacobi_symbol(p, q);
        out.re_coeff_left = -j / (2 * rq);
        out.re_coeff_right = j / (2 * rq);
    } else if (qm4 == 3) {
        out.row = TableRow::q3;
        int j = jacobi_symbol(p, q);
        out.re_coeff_left = -j / (2 * rq);
        out.re_coeff_right = -j / (2 * rq);
    } else if (qm4 == 2) {
        out.row = TableRow::q2;
        out.re_coeff_left = 0;
        out.re_coeff_right = 0;
    } else {
        int j = jacobi_symbol(q, p);
        if (p % 4 == 1) {
            out.row = TableRow::q0_p1;
            out.re_coeff_left = -j / rq;
            out.re_coeff_right = 0;
        } else {
            out.row = TableRow::q0_p3;
            out.re_coeff_left = 0;
            out.re_coeff_right = j / rq;
        }
    }
    return out;
}

ReBehavior classify_re_behavior(const cpp_int& p, const cpp_int& q) {
    RationalExpansion e = expansion_constants(p, q);
    return ReBehavior{e.row, e.re_coeff_left, e.re_coeff_right};
}

bool is_differentiable_f(const cpp_int& p, const cpp_int& q) {
    if (q < 1) throw std::invalid_argument("is_differentiable_f: q must be >= 1");
    if (gcd(p < 0 ? cpp_int(-p) : p, q) != 1)
        throw std::invalid_argument("is_differentiable_f: gcd(p, q) != 1");
    return p % 2 != 0 && q % 2 != 0;
}

real twisted_phi_sup_bound(const TwistedPhi& t) {
    return sqrt(2 * real(t.q)) * zeta_even(2 * t.k + 2) / pow(two_pi(), t.k + 1);
}

ComplexWithError twisted_phi_eval(const TwistedPhi& t, const real& x, const real& tol) {
    if (!(tol > 0)) throw std::invalid_argument("twisted_phi_eval: tol must be > 0");
    if (t.q < 1) throw std::invalid_argument("twisted_phi_eval: q must be >= 1");
    cpp_int p = normalize_residue(t.p, t.q);
    if (gcd(p, t.q) != 1) throw std::invalid_argument("twisted_phi_eval: gcd(p, q) != 1");
    const cpp_int& q = t.q;
    int k = t.k;

    if (q == 1) return phi_primitive(k, x, tol);

    if (q % 2 == 1) {
        // S(q,p,m) = S(q,p) e(-c m^2 / q), c = p* ((q+1)/2)^2 mod q
        GaussSumValue S = gauss_sum_closed(q, p);
        cpp_int inv2 = (q + 1) / 2;
        cpp_int pst = mod_inverse(p, q);
        cpp_int c = (pst * ((inv2 * inv2) % q)) % q;
        real shift = real(c) / real(q);
        real amp = sqrt(real(q));
        ComplexWithError base = phi_primitive(k, x - shift, tol / (amp + 1));
        return ComplexWithError{S.to_complex() * base.value,
                                amp * base.est_error + 8 * working_eps() * amp};
    }
    if (q % 4 == 0) {
        // only even m survive
        GaussSumValue S = gauss_sum_closed(q, p);
        cpp_int pst = mod_inverse(p, q);
        real shift = real(pst) / real(q);
        real scale = pow(real(4), -(k + 1));
        real amp = sqrt(2 * real(q)) * scale;
        ComplexWithError base = phi_primitive(k, 4 * x - shift, tol / (amp + 1));
        return ComplexWithError{S.to_complex() * base.value * scale,
                                amp * base.est_error + 8 * working_eps() * amp};
    }
    // q = 2 mod 4: only odd m survive, through S(4q,p)
    cpp_int q4 = 4 * q;
    GaussSumValue S4 = gauss_sum_closed(q4, p);
    cpp_int pst = mod_inverse(p, q4);
    real w = x - real(pst) / real(q4);
    real amp = sqrt(2 * real(q4)) / 2;
    ComplexWithError whole = phi_primitive(k, w, tol / (2 * amp + 1));
    ComplexWithError even = phi_primitive(k, 4 * w, tol / (2 * amp + 1));
    real scale = pow(real(4), -(k + 1));
    Complex odd_part = whole.value - even.value * scale;
    return ComplexWithError{S4.to_complex() * odd_part / real(2),
                            amp * (whole.est_error + even.est_error) + 8 * working_eps() * amp};
}

ComplexWithError twisted_phi_eval_brute(const TwistedPhi& t, const real& x, long long terms) {
    cpp_int p = normalize_residue(t.p, t.q);
    Complex sum;
    for (long long m = 1; m <= terms; ++m) {
        GeneralGaussSum Sm = gauss_sum_general(t.q, p, m);
        if (Sm.base.is_zero()) continue;
        Complex rot = cis2pi(frac_mul(x, m * m));
        real denom = pow(two_pi() * real(m) * real(m), t.k + 1);
        sum += Sm.value * rot * (inv_i_power(t.k + 1) / denom);
    }
    real tail = sqrt(2 * real(t.q)) /
                (pow(two_pi(), t.k + 1) * (2 * t.k + 1) * pow(real(terms), 2 * t.k + 1));
    return ComplexWithError{sum, tail + (10 * real(terms) + 10) * working_eps()};
}

namespace detail {

ComplexWithError exp_tail_integral(const real& nu, const real& s0, const real& tol) {
    if (!(s0 > 0)) throw std::invalid_argument("exp_tail_integral: s0 must be > 0");
    // rotate to s = s0 - i v:  E = -i e^{-2 pi i s0} int_0^inf (s0 - i v)^{-nu} e^{-2 pi v} dv
    real bound0 = pow(s0, -nu);
    real vmax = 4;
    {
        real need = log((bound0 + 1) / tol) / two_pi() + 1;
        if (need > vmax) vmax = need;
    }
    auto integrand = [&](const real& v, real& err_out) -> Complex {
        err_out = 0;
        return cpow(Complex(s0, -v), -nu) * exp(-two_pi() * v);
    };
    real edges[] = {real(0), real(0.25), real(0.5), real(1), real(2), vmax};
    Complex G;
    real est = 0;
    for (int i = 0; i + 1 < 6; ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        PanelIntegral seg = integrate_refined(integrand, edges[i], edges[i + 1], tol / 6, 24, 512);
        G += seg.value;
        est += seg.refinement_diff;
    }
    est += bound0 * exp(-two_pi() * vmax) / two_pi(); // truncated v-tail
    Complex rot = cis2pi(-frac1(s0));
    Complex E = Complex(real(0), real(-1)) * rot * G;
    return ComplexWithError{E, est + 20 * working_eps() * (abs(E) + 1)};
}

} // namespace detail

namespace {

// J_K = int_0^h t^{K+1/2} phi_{q,p}^{(-K)}(-1/(4 q^2 t)) dt, term by term:
// each series term is an incomplete oscillatory integral E(K+5/2, c_m/|h|).
ComplexWithError chirp_integral(const cpp_int& p, const cpp_int& q, int K, const real& h,
                                const real& tol) {
    real habs = fabs(h);
    bool positive = h > 0;
    real q2 = real(q) * real(q);
    real nu = real(K) + real(5) / 2;
    real amp = sqrt(2 * real(q));

    // tail of the m-series:
    //   |W_m c^{K+3/2} E| <= amp |h|^{K+5/2} 4 q^2 / ((2 pi)^{K+2} m^{2K+4})
    real lead = amp * pow(habs, nu) * 4 * q2 / pow(two_pi(), K + 2);
    long long M = 1;
    {
        real mf = pow(2 * lead / ((2 * K + 3) * tol), real(1) / (2 * K + 3));
        M = std::max<long long>(1, to_ll(ceil(mf)) + 1);
    }

    Complex J;
    real est = 0;
    for (long long m = 1; m <= M; ++m) {
        GeneralGaussSum Sm = gauss_sum_general(q, p, m);
        if (Sm.base.is_zero()) continue;
        real c = real(m) * real(m) / (4 * q2);
        real s0 = c / habs;
        real weight_mag = amp / pow(two_pi() * real(m) * real(m), K + 1);
        real scale = pow(c, real(K) + real(3) / 2);
        real tolE = tol / (2 * real(M) * (weight_mag * scale + 1));
        ComplexWithError E = detail::exp_tail_integral(nu, s0, tolE);
        Complex W = Sm.value * (inv_i_power(K + 1) / pow(two_pi() * real(m) * real(m), K + 1));
        Complex term;
        if (positive) {
            term = W * E.value * scale;
        } else {
            Complex sign_factor = (K % 2 == 0) ? Complex(real(0), real(-1)) : Complex(real(0), real(1));
            term = sign_factor * W * conj(E.value) * scale;
        }
        J += term;
        est += weight_mag * scale * E.est_error;
    }
    est += lead / ((2 * K + 3) * pow(real(M), 2 * K + 3)); // m-series tail
    return ComplexWithError{J, est + (10 * real(M) + 10) * working_eps() * (abs(J) + 1)};
}

} // namespace

ComplexWithError remainder_term(const cpp_int& p_in, const cpp_int& q, const real& h, const real& tol) {
    if (h == 0 || fabs(h) > real(0.1))
        throw std::invalid_argument("remainder_term: need 0 < |h| <= 0.1");
    if (!(tol > 0)) throw std::invalid_argument("remainder_term: tol must be > 0");
    cpp_int p = normalize_residue(p_in, q);
    if (q < 1 || gcd(p, q) != 1) throw std::invalid_argument("remainder_term: bad p/q");

    real habs = fabs(h);
    int sgn = h > 0 ? 1 : -1;
    real u_arg = -1 / (4 * real(q) * real(q) * h);

    real pref1 = 4 * real(q) * pow(habs, real(3) / 2) / sqrt(real(2));
    ComplexWithError tw = twisted_phi_eval(TwistedPhi{q, p, 0}, u_arg, tol / (3 * pref1));
    Complex piece1 = -pref1 * (cis(-3 * sgn * pi() / 4) * tw.value);

    real pref2 = 6 * real(q) / sqrt(real(2));
    ComplexWithError J = chirp_integral(p, q, 0, h, tol / (3 * pref2));
    Complex piece2 = -pref2 * (cis(pi() / 4) * J.value);

    ComplexWithError out;
    out.value = piece1 + piece2;
    out.est_error = pref1 * tw.est_error + pref2 * J.est_error +
                    30 * working_eps() * (abs(out.value) + 1);
    return out;
}

real a_coefficient(int k) {
    if (k < 0) throw std::invalid_argument("a_coefficient: k must be >= 0");
    real a = pow(real(4), k + 1);
    for (int j = 1; j <= k; ++j) a *= real(j) + real(1) / 2;
    if (k % 2 == 1) a = -a;
    return a;
}

AsymptoticExpansion asymptotic_terms(const cpp_int& p_in, const cpp_int& q, const real& h, int K,
                                     const real& tol) {
    if (K < 0) throw std::invalid_argument("asymptotic_terms: K must be >= 0");
    if (h == 0 || fabs(h) > real(0.1))
        throw std::invalid_argument("asymptotic_terms: need 0 < |h| <= 0.1");
    cpp_int p = normalize_residue(p_in, q);
    if (q < 1 || gcd(p, q) != 1) throw std::invalid_argument("asymptotic_terms: bad p/q");

    real habs = fabs(h);
    int sgn = h > 0 ? 1 : -1;
    real u_arg = -1 / (4 * real(q) * real(q) * h);
    Complex front = cis(-3 * sgn * pi() / 4) / sqrt(real(2));

    AsymptoticExpansion out;
    out.est_error = 0;
    for (int k = 0; k <= K; ++k) {
        real ak = a_coefficient(k);
        real pref = fabs(ak) * pow(real(q), 2 * k + 1) * pow(habs, real(k) + real(3) / 2);
        ComplexWithError tw = twisted_phi_eval(TwistedPhi{q, p, k}, u_arg, tol / (3 * (K + 1) * pref));
        // e^{k pi i (1 - sgn h)/2} = 1 for h > 0, (-1)^k for h < 0
        real signf = (sgn > 0 || k % 2 == 0) ? 1 : -1;
        Complex term = -(front * tw.value) * (ak * pow(real(q), 2 * k + 1) * signf *
                                              pow(habs, real(k) + real(3) / 2));
        out.terms.push_back(term);
        out.est_error += pref * tw.est_error;
    }

    real aK = a_coefficient(K);
    real prefI = fabs(aK) * (real(K) + real(3) / 2) * pow(real(q), 2 * K + 1) / sqrt(real(2));
    ComplexWithError J = chirp_integral(p, q, K, h, tol / (3 * prefI));
    out.integral_tail = -(cis(pi() / 4) / sqrt(real(2))) *
                        ((real(K) + real(3) / 2) * aK * pow(real(q), 2 * K + 1)) * J.value;
    out.est_error += prefI * J.est_error;

    out.total = out.integral_tail;
    for (const auto& t : out.terms) out.total += t;
    out.est_error += 30 * working_eps() * (abs(out.total) + 1);
    return out;
}

namespace detail {

ComplexWithError remainder_chirp_integral_brute(const cpp_int& p_in, const cpp_int& q, const real& h,
                                                const real& tol) {
    cpp_int p = normalize_residue(p_in, q);
    real habs = fabs(h);
    bool positive = h > 0;
    real sup = twisted_phi_sup_bound(TwistedPhi{q, p, 0});
    real U = sqrt(habs);
    real u_cut = pow(3 * tol / (8 * (sup + 1)), real(1) / 3);
    int bands = 1;
    if (u_cut < U) bands = std::max(1, static_cast<int>(to_ll(ceil(log(U / u_cut) / log(real(2))))));
    real band_tol = tol / (2 * bands);
    // propagated error integrates to tw_tol * (2/3) U^3, so the per-node
    // tolerance only needs to resolve tol / |h|^{3/2}
    real tw_tol = 3 * tol / (16 * pow(habs, real(3) / 2));
    if (tw_tol > real(1e-3)) tw_tol = real(1e-3);

    auto integrand = [&](const real& u, real& err_out) -> Complex {
        real arg = positive ? -1 / (4 * real(q) * real(q) * u * u)
                            : 1 / (4 * real(q) * real(q) * u * u);
        ComplexWithError tw = twisted_phi_eval(TwistedPhi{q, p, 0}, arg, tw_tol);
        err_out = 2 * u * u * tw.est_error;
        Complex jac = positive ? Complex(2 * u * u, real(0)) : Complex(real(0), -2 * u * u);
        return jac * tw.value;
    };

    Complex acc;
    real est = 0;
    real hi = U;
    for (int j = 0; j < bands; ++j) {
        real lo = hi / 2;
        PanelIntegral seg = integrate_refined(integrand, lo, hi, band_tol, 16, 2048);
        acc += seg.value;
        est += seg.refinement_diff + seg.propagated_error;
        hi = lo;
    }
    est += 2 * (sup + 1) * hi * hi * hi / 3; // stub bound
    return ComplexWithError{acc, est};
}

} // namespace detail

} // namespace rphi
