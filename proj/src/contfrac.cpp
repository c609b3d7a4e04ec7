#include "riemannphi/contfrac.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace rphi {

namespace {

unsigned digits10_of(const cpp_int& v) {
    return static_cast<unsigned>(v.str().size());
}

cpp_int floor_to_int(const real& x) {
    real f = floor(x);
    cpp_int out;
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, f.backend().data(), MPFR_RNDN);
    // mpz -> cpp_int via string; quotient extraction is not a hot path
    char* s = mpz_get_str(nullptr, 10, z);
    out = cpp_int(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, std::strlen(s) + 1);
    mpz_clear(z);
    return out;
}

struct ConvergentRecurrence {
    cpp_int p_prev = 1, q_prev = 0; // r_{-1}
    cpp_int p_cur = 0, q_cur = 1;
    bool started = false;

    Convergent push(const cpp_int& a, int n) {
        if (!started) {
            p_cur = a;
            q_cur = 1;
            started = true;
        } else {
            cpp_int pn = a * p_cur + p_prev;
            cpp_int qn = a * q_cur + q_prev;
            p_prev = p_cur; q_prev = q_cur;
            p_cur = pn; q_cur = qn;
        }
        Convergent c;
        c.p = p_cur;
        c.q = q_cur;
        c.n = n;
        c.q_mod4 = static_cast<int>(c.q % 4);
        return c;
    }
};

Side side_of(const Convergent& c, const CertifiedReal& x) {
    scoped_digits guard(std::max<unsigned>(working_digits(), digits10_of(c.q) * 2 + 25));
    real rn = real(c.p) / real(c.q);
    if (rn < x.lo) return Side::left;
    if (rn > x.hi) return Side::right;
    return Side::exact;
}

} // namespace

CertifiedReal CertifiedReal::from_rational(const Rational& r) {
    CertifiedReal out;
    out.tag = InputKind::rational;
    out.rat = r;
    out.value_digits = working_digits();
    scoped_digits guard(out.value_digits + 15);
    real v = real(r.p) / real(r.q);
    out.lo = v;
    out.hi = v;
    return out;
}

CertifiedReal CertifiedReal::from_decimal(const std::string& literal) {
    std::string body = literal;
    bool neg = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        neg = body[0] == '-';
        body = body.substr(1);
    }
    auto dot = body.find('.');
    std::string intpart = dot == std::string::npos ? body : body.substr(0, dot);
    std::string fracpart = dot == std::string::npos ? "" : body.substr(dot + 1);
    if (intpart.empty() && fracpart.empty())
        throw std::invalid_argument("from_decimal: empty literal");
    for (char ch : intpart + fracpart)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("from_decimal: not a plain decimal literal: " + literal);

    unsigned places = static_cast<unsigned>(fracpart.size());
    CertifiedReal out;
    out.tag = InputKind::decimal;
    out.value_digits = places + static_cast<unsigned>(intpart.size());
    scoped_digits guard(out.value_digits + 20);
    real v(body);
    if (neg) v = -v;
    real u = pow(real(10), -static_cast<int>(places));
    out.lo = v - u;
    out.hi = v + u;
    return out;
}

CertifiedReal CertifiedReal::from_quadratic(std::vector<cpp_int> pre, std::vector<cpp_int> period,
                                            unsigned digits) {
    if (pre.empty()) throw std::invalid_argument("from_quadratic: need at least a_0");
    if (period.empty()) throw std::invalid_argument("from_quadratic: empty period");
    if (pre[0] < 0) throw std::invalid_argument("from_quadratic: a_0 must be >= 0");
    for (size_t i = 1; i < pre.size(); ++i)
        if (pre[i] < 1) throw std::invalid_argument("from_quadratic: terms past a_0 must be >= 1");
    for (const auto& a : period)
        if (a < 1) throw std::invalid_argument("from_quadratic: period terms must be >= 1");

    if (digits == 0) digits = working_digits() + 20;
    CertifiedReal out;
    out.tag = InputKind::quadratic;
    out.quad_pre = pre;
    out.quad_period = period;
    out.value_digits = digits;

    scoped_digits guard(digits + 20);
    // tail value t = [period; period; ...] is the fixed point of the Moebius map
    // given by the product of the period matrices (a 1; 1 0)
    cpp_int A = 1, B = 0, C = 0, D = 1;
    for (const auto& a : period) {
        cpp_int A2 = A * a + B, B2 = A;
        cpp_int C2 = C * a + D, D2 = C;
        A = A2; B = B2; C = C2; D = D2;
    }
    // C t^2 + (D - A) t - B = 0, positive root
    real Ar(A), Br(B), Cr(C), Dr(D);
    real disc = (Ar - Dr) * (Ar - Dr) + 4 * Cr * Br;
    real t = ((Ar - Dr) + sqrt(disc)) / (2 * Cr);
    real v = t;
    for (size_t i = pre.size(); i-- > 1;) v = real(pre[i]) + 1 / v;
    v = real(pre[0]) + 1 / v;

    real err = (fabs(v) + 1) * pow(real(10), -static_cast<int>(digits)) * 100 * static_cast<int>(pre.size() + period.size());
    out.lo = v - err;
    out.hi = v + err;
    return out;
}

CertifiedReal CertifiedReal::refined(unsigned digits) const {
    if (digits <= value_digits) return *this;
    switch (tag) {
    case InputKind::rational: {
        CertifiedReal out = *this;
        out.value_digits = digits;
        scoped_digits guard(digits + 15);
        real v = real(rat->p) / real(rat->q);
        out.lo = v;
        out.hi = v;
        return out;
    }
    case InputKind::quadratic:
        return from_quadratic(quad_pre, quad_period, digits);
    case InputKind::decimal:
        return *this; // the literal is all we have
    }
    return *this;
}

namespace {

CfExpansion expand_rational(const Rational& r, int max_terms) {
    CfExpansion out;
    cpp_int P = r.p, Q = r.q;
    // floor division for the leading term
    cpp_int a0 = P >= 0 ? cpp_int(P / Q) : cpp_int(-((-P + Q - 1) / Q));
    out.quotients.push_back(a0);
    ConvergentRecurrence rec;
    out.convergents.push_back(rec.push(a0, 0));
    cpp_int num = P - a0 * Q, den = Q; // remainder num/den in [0,1)
    int n = 1;
    while (num != 0 && n <= max_terms) {
        cpp_int a = den / num;
        cpp_int rem = den - a * num;
        den = num;
        num = rem;
        out.quotients.push_back(a);
        out.convergents.push_back(rec.push(a, n));
        ++n;
    }
    out.truncated = num != 0;
    out.certified_terms = n - 1;
    if (out.truncated) out.note = "stopped at max_terms before the expansion terminated";
    return out;
}

CfExpansion expand_quadratic(const CertifiedReal& x, int max_terms) {
    CfExpansion out;
    ConvergentRecurrence rec;
    const auto& pre = x.quad_pre;
    const auto& per = x.quad_period;
    for (int n = 0; n <= max_terms; ++n) {
        cpp_int a = n < static_cast<int>(pre.size())
                        ? pre[n]
                        : per[(n - pre.size()) % per.size()];
        out.quotients.push_back(a);
        out.convergents.push_back(rec.push(a, n));
    }
    out.certified_terms = max_terms;
    return out;
}

CfExpansion expand_interval(const CertifiedReal& x, int max_terms) {
    CfExpansion out;
    unsigned dwork = x.value_digits + 30;
    scoped_digits guard(dwork);
    real lo = x.lo, hi = x.hi;
    real outward = pow(real(10), -static_cast<int>(dwork - 2));
    ConvergentRecurrence rec;
    for (int n = 0; n <= max_terms; ++n) {
        cpp_int al = floor_to_int(lo);
        cpp_int ah = floor_to_int(hi);
        if (al != ah) {
            out.truncated = true;
            out.note = "insufficient precision: enclosure too wide at term " + std::to_string(n);
            break;
        }
        out.quotients.push_back(al);
        out.convergents.push_back(rec.push(al, n));
        out.certified_terms = n;
        real fl = lo - real(al);
        real fh = hi - real(al);
        if (fl <= 0 || fh >= 1) {
            if (n < max_terms) {
                out.truncated = true;
                out.note = "insufficient precision: fractional part not separated from 0 at term " +
                           std::to_string(n);
            }
            break;
        }
        real nlo = (1 / fh) * (1 - outward);
        real nhi = (1 / fl) * (1 + outward);
        lo = nlo;
        hi = nhi;
    }
    return out;
}

} // namespace

CfExpansion cf_expand(const CertifiedReal& x, int max_terms) {
    if (max_terms < 1) throw std::invalid_argument("cf_expand: max_terms must be >= 1");
    CfExpansion out;
    switch (x.tag) {
    case InputKind::rational: out = expand_rational(*x.rat, max_terms); break;
    case InputKind::quadratic: out = expand_quadratic(x, max_terms); break;
    case InputKind::decimal: out = expand_interval(x, max_terms); break;
    }
    for (auto& c : out.convergents) c.side = side_of(c, x);
    auto taued = tau_sequence(x, out.convergents);
    out.convergents = std::move(taued);
    return out;
}

std::vector<Convergent> tau_sequence(const CertifiedReal& x, std::vector<Convergent> convergents) {
    unsigned need = working_digits();
    for (const auto& c : convergents) need = std::max(need, 2 * digits10_of(c.q) + 30);
    CertifiedReal xr = need > x.value_digits ? x.refined(need) : x;

    scoped_digits guard(need + 10);
    for (auto& c : convergents) {
        c.tau_defined = false;
        c.tau_certified = false;
        if (c.q <= 1) continue; // ln q = 0
        real rn = real(c.p) / real(c.q);
        real d_lo, d_hi;
        if (rn > xr.hi) {
            d_lo = rn - xr.hi;
            d_hi = rn - xr.lo;
        } else if (rn < xr.lo) {
            d_lo = xr.lo - rn;
            d_hi = xr.hi - rn;
        } else {
            continue; // cannot separate x from r_n (or exact hit)
        }
        if (d_lo <= 0) continue;
        real lq = log(real(c.q));
        c.tau_defined = true;
        c.tau_certified = true;
        c.tau_hi = -log(d_lo) / lq;
        c.tau_lo = -log(d_hi) / lq;
        c.tau = -log((d_lo + d_hi) / 2) / lq;
    }
    return convergents;
}

TauEstimate tau_estimate(const CertifiedReal& x, int terms) {
    if (terms < 2) throw std::invalid_argument("tau_estimate: need at least 2 terms");
    CfExpansion exp = cf_expand(x, terms);
    TauEstimate out;
    out.truncated = exp.truncated;

    int n_eff = exp.convergents.empty() ? 0 : exp.convergents.back().n;
    for (const auto& c : exp.convergents) {
        if (c.n < 1 || c.q_mod4 == 2) continue;
        if (!c.tau_defined || !c.tau_certified) continue;
        out.filtered_indices.push_back(c.n);
        out.filtered_tau.push_back(c.tau);
    }
    if (out.filtered_indices.empty())
        throw precision_error("tau_estimate: no certified filtered convergents", x.value_digits + 20);

    // Tail window: the back quarter of the expansion. The limsup proxy is the
    // running max over it; the full filtered sequence is reported so callers
    // can judge convergence themselves.
    int window_start = std::max(2, (3 * n_eff) / 4);
    real best = 0;
    bool found = false;
    for (size_t i = 0; i < out.filtered_indices.size(); ++i) {
        if (out.filtered_indices[i] < window_start) continue;
        out.window_indices.push_back(out.filtered_indices[i]);
        if (!found || out.filtered_tau[i] > best) best = out.filtered_tau[i];
        found = true;
    }
    if (!found) {
        // precision ran out before the window; fall back to the deepest certified entries
        size_t k = out.filtered_indices.size();
        size_t from = k - std::max<size_t>(1, k / 4);
        for (size_t i = from; i < k; ++i) out.window_indices.push_back(out.filtered_indices[i]);
        best = *std::max_element(out.filtered_tau.begin() + from, out.filtered_tau.end());
    }
    out.tau_hat = best;
    if (x.tag == InputKind::quadratic) {
        out.has_exact = true;
        out.exact_value = 2;
    }
    return out;
}

real alpha_from_tau(const real& tau) {
    if (isinf(tau) && tau > 0) return real(1) / 2;
    if (tau < 2) throw std::invalid_argument("alpha_from_tau: tau must be >= 2");
    return real(1) / 2 + 1 / (2 * tau);
}

} // namespace rphi
