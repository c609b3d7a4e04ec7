#include "riemannphi/theta.hpp"

#include <mpfr.h>

#include <algorithm>

namespace rphi {

namespace {

constexpr long long kDirectTermCap = 2000000;

void require_upper_half(const UpperHalfPoint& z) {
    if (!(z.y > 0)) throw std::invalid_argument("theta: Im z must be > 0");
}

void require_tol(const real& tol) {
    if (!(tol > 0)) throw std::invalid_argument("theta: tol must be > 0");
    real floor_tol = 20 * working_eps();
    if (tol < floor_tol) {
        unsigned needed = static_cast<unsigned>(mpfr_get_d(
                              real(ceil(-log10(tol))).backend().data(), MPFR_RNDN)) + 5;
        throw precision_error("theta: tol below working precision, need about " +
                                  std::to_string(needed) + " digits",
                              needed);
    }
}

} // namespace

real theta_magnitude_bound(const real& y) {
    return 1 + 2 * exp(-two_pi() * y) + 1 / sqrt(2 * y);
}

ThetaResult theta_direct(const UpperHalfPoint& z, const real& tol) {
    require_upper_half(z);
    require_tol(tol);

    real ln_arg = log(2 / tol);
    if (ln_arg < 0) ln_arg = 0;
    real nf = ceil(sqrt(ln_arg / (two_pi() * z.y))) + 2;
    if (nf > real(kDirectTermCap))
        throw series_not_effective("theta_direct: term count beyond cap",
                                   static_cast<long long>(mpfr_get_d(nf.backend().data(), MPFR_RNDN)));
    long long N = static_cast<long long>(mpfr_get_d(nf.backend().data(), MPFR_RNDN));

    Complex sum;
    real m2py = -two_pi() * z.y;
    for (long long n = 1; n <= N; ++n) {
        real decay = exp(m2py * n * n);
        Complex rot = cis2pi(frac_mul(z.x, n * n));
        sum += rot * decay;
    }
    Complex value = Complex(real(1), real(0)) + Complex(2) * sum;

    // geometric-ratio tail bound from the first omitted term
    real t_next = exp(m2py * (N + 1) * (N + 1));
    real ratio = exp(m2py * (2 * N + 3));
    real tail = 2 * t_next / (1 - ratio);

    ThetaResult out;
    out.value = value;
    // the geometric tail bound can be attained when all omitted terms align in
    // phase; keep a little slack so downstream comparisons are never razor-thin
    out.est_error = tail * real("1.05") + (6 * real(N) + 10) * working_eps() * (abs(value) + 1);
    out.method = ThetaMethod::direct;
    out.terms_used = N;
    return out;
}

ThetaResult theta_near_rational(long long p, long long q, const Complex& zeta, const real& tol,
                                long long max_terms) {
    if (q < 1) throw std::invalid_argument("theta_near_rational: q must be >= 1");
    p %= q;
    if (p <= 0) p += q; // residue in [1, q]
    if (gcd(cpp_int(p), cpp_int(q)) != 1)
        throw std::invalid_argument("theta_near_rational: gcd(p, q) != 1");
    if (!(zeta.im > 0)) throw std::invalid_argument("theta_near_rational: Im zeta must be > 0");
    require_tol(tol);

    // prefactor F = e^{i pi/4} / (q sqrt(2)) * zeta^{-1/2}
    Complex F = cis(pi() / 4) * inv_sqrt_principal(zeta);
    F /= real(q) * sqrt(real(2));
    real absF = abs(F);

    // |S(q,p,m) exp(...)| <= sqrt(2q) exp(-c m^2)
    real az2 = norm2(zeta);
    real c = pi() * zeta.im / (2 * real(q) * real(q) * az2);
    real amp = sqrt(2 * real(q));

    // smallest M with 2 |F| amp e^{-c (M+1)^2} / (1 - e^{-c(2M+3)}) <= tol / 2
    real budget = tol / 2;
    real lead = 2 * absF * amp;
    long long M = 0;
    if (lead > budget) {
        real ln_need = log(lead / budget);
        real mf = sqrt(ln_need / c);
        M = static_cast<long long>(mpfr_get_d(ceil(mf).backend().data(), MPFR_RNDN));
        if (M < 0) M = 0;
        auto tail_at = [&](long long mm) {
            real t = lead * exp(-c * (mm + 1) * (mm + 1));
            real r = exp(-c * (2 * mm + 3));
            return t / (1 - r);
        };
        while (M > 0 && tail_at(M - 1) <= budget) --M;
        while (tail_at(M) > budget) {
            ++M;
            if (M > max_terms)
                throw series_not_effective("theta_near_rational: series not effective here", M);
        }
    }
    if (M > max_terms)
        throw series_not_effective("theta_near_rational: series not effective here", M);

    GaussSumValue S0 = gauss_sum_closed(q, p);

    // exp(-i pi m^2 / (2 q^2 zeta)) = exp(m^2 w); split w into real part and turns
    Complex w = Complex(real(0), -pi()) / (Complex(2 * real(q) * real(q)) * zeta);
    real w_turns = w.im / two_pi();

    Complex series;
    for (long long m = 1; m <= M; ++m) {
        GeneralGaussSum Sm = gauss_sum_general(q, p, m);
        if (Sm.base.is_zero()) continue;
        real mag = exp(w.re * m * m);
        Complex rot = cis2pi(frac_mul(w_turns, m * m));
        series += Sm.value * rot * mag;
    }
    Complex value = F * (S0.to_complex() + Complex(2) * series);

    real tail = 0;
    {
        real t = lead * exp(-c * (M + 1) * (M + 1));
        real r = exp(-c * (2 * M + 3));
        tail = t / (1 - r);
    }

    ThetaResult out;
    out.value = value;
    out.est_error = tail * real("1.05") +
                    (10 * real(M) + 24) * working_eps() * (abs(value) + absF * amp + 1);
    out.method = ThetaMethod::near_rational;
    out.anchor_p = p;
    out.anchor_q = q;
    out.terms_used = M;
    return out;
}

namespace detail {

std::vector<std::pair<long long, long long>> rational_anchors(const real& x, long long q_cap) {
    if (mpfr_zero_p(x.backend().data())) return {{0, 1}};
    // exact dyadic value of x as a rational, then plain Euclid
    mpz_t num;
    mpz_init(num);
    mpfr_exp_t e = mpfr_get_z_2exp(num, x.backend().data());
    char* s = mpz_get_str(nullptr, 10, num);
    cpp_int P(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, std::strlen(s) + 1);
    mpz_clear(num);
    cpp_int Q = 1;
    if (e >= 0) P <<= static_cast<unsigned>(e);
    else Q <<= static_cast<unsigned>(-e);

    std::vector<std::pair<long long, long long>> anchors;
    cpp_int a0 = P >= 0 ? cpp_int(P / Q) : cpp_int(-((-P + Q - 1) / Q));
    cpp_int p_prev = 1, q_prev = 0, p_cur = a0, q_cur = 1;
    anchors.emplace_back(static_cast<long long>(a0), 1);
    cpp_int numr = P - a0 * Q, den = Q;
    while (numr != 0 && static_cast<int>(anchors.size()) < 64) {
        cpp_int a = den / numr;
        cpp_int rem = den - a * numr;
        den = numr;
        numr = rem;
        cpp_int pn = a * p_cur + p_prev;
        cpp_int qn = a * q_cur + q_prev;
        p_prev = p_cur; q_prev = q_cur;
        p_cur = pn; q_cur = qn;
        if (q_cur > q_cap) break;
        anchors.emplace_back(static_cast<long long>(p_cur), static_cast<long long>(q_cur));
    }
    return anchors;
}

} // namespace detail

ThetaResult theta_auto(const UpperHalfPoint& z, const real& tol) {
    require_upper_half(z);
    require_tol(tol);

    real xr = frac1(z.x);
    real ln_tol = log(1 / tol);
    if (ln_tol < 1) ln_tol = 1;

    real direct_cost = sqrt(ln_tol / (two_pi() * z.y)) + 2;

    auto anchors = detail::rational_anchors(xr, 1000000000000000LL);
    real near_factor = sqrt(2 * ln_tol / (pi() * z.y));

    long long best_p = 0, best_q = 0;
    real best_cost = direct_cost;
    bool use_near = false;
    for (auto [p, q] : anchors) {
        real zx = xr - real(p) / real(q);
        real azeta = hypot(zx, z.y);
        real cost = real(q) * azeta * near_factor + 1;
        if (cost < best_cost || (use_near && cost == best_cost && q > best_q)) {
            best_cost = cost;
            best_p = p;
            best_q = q;
            use_near = true;
        }
    }

    if (use_near) {
        Complex zeta(xr - real(best_p) / real(best_q), z.y);
        long long cap = static_cast<long long>(mpfr_get_d((4 * best_cost + 64).backend().data(), MPFR_RNDN));
        try {
            ThetaResult r = theta_near_rational(best_p, best_q, zeta, tol, cap);
            return r;
        } catch (const series_not_effective&) {
            // fall through to the direct series
        }
    }
    return theta_direct(UpperHalfPoint{xr, z.y}, tol);
}

} // namespace rphi
