#include "riemannphi/phi.hpp"

#include "riemannphi/quadrature.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace rphi {

namespace {

constexpr long long kSeriesCap = 100000000;   // 1e8
constexpr long long kMpfrSeriesCap = 2000000; // direct mpfr loop beyond this is not worth it

// ---- double-double arithmetic for the long real-axis sums ----------------

struct dd {
    double hi = 0, lo = 0;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return dd{s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return dd{s, b - (s - a)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return dd{p, std::fma(a, b, -p)};
}

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, lo);
}

inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return quick_two_sum(p.hi, lo);
}

struct cdd {
    dd re, im;
};

inline cdd cdd_mul(const cdd& a, const cdd& b) {
    dd re = dd_add(dd_mul(a.re, b.re), dd_mul_d(dd_mul(a.im, b.im), -1.0));
    dd im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
    return cdd{re, im};
}

dd to_dd(const real& x) {
    double hi = x.convert_to<double>();
    real rest = x - hi;
    return dd{hi, rest.convert_to<double>()};
}

cdd unit_phase_dd(const real& turns) {
    Complex z = cis2pi(turns);
    return cdd{to_dd(z.re), to_dd(z.im)};
}

// sum_{n=1..N} e(n^2 x) / n^2 on the real axis, via the exact rotation
// recurrence e((n+1)^2 x) = e(n^2 x) e((2n+1) x); no per-term trigonometry.
Complex flat_sum_dd(const real& x, long long N, real& rounding_out) {
    real xr = frac1(x);
    cdd u = unit_phase_dd(xr);                 // e(x)
    cdd v = unit_phase_dd(frac_mul(xr, 3));    // e(3x)
    cdd w = unit_phase_dd(frac_mul(xr, 2));    // e(2x)

    cdd acc{dd_mul_d(u.re, 1.0), dd_mul_d(u.im, 1.0)};
    for (long long n = 2; n <= N; ++n) {
        u = cdd_mul(u, v);
        v = cdd_mul(v, w);
        double inv = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
        acc.re = dd_add(acc.re, dd_mul_d(u.re, inv));
        acc.im = dd_add(acc.im, dd_mul_d(u.im, inv));
    }
    rounding_out = real(3e-31) * real(static_cast<double>(N)) + real(1e-26);
    real re = real(acc.re.hi) + real(acc.re.lo);
    real im = real(acc.im.hi) + real(acc.im.lo);
    return Complex(re, im);
}

long long to_ll(const real& x) {
    return static_cast<long long>(mpfr_get_d(x.backend().data(), MPFR_RNDN));
}

} // namespace

PhiValue phi_series(const Complex& z, const real& tol) {
    if (z.im < 0) throw std::invalid_argument("phi_series: Im z must be >= 0");
    if (!(tol > 0)) throw std::invalid_argument("phi_series: tol must be > 0");

    real n_flat_r = ceil(1 / (two_pi() * tol)) + 1;
    long long n_flat = n_flat_r > real(4 * kSeriesCap) ? 4 * kSeriesCap : to_ll(n_flat_r);

    long long N = n_flat;
    bool decay_truncated = false;
    if (z.im > 0) {
        // decay-based truncation: tail <= e^{-2 pi N^2 y} / (2 pi N^2 (1 - ratio))
        real ln_arg = log(1 / (pi() * tol));
        if (ln_arg < 0) ln_arg = 0;
        long long n_decay = to_ll(ceil(sqrt(ln_arg / (two_pi() * z.im)))) + 2;
        if (n_decay < N) {
            N = n_decay;
            decay_truncated = true;
        }
    }
    if (N > kSeriesCap)
        throw convergence_error("phi_series: tolerance unreachable, would need " +
                                std::to_string(N) + " terms (cap 1e8)");

    Complex sum;
    real rounding = 0;
    if (z.im == 0 && N > 4000) {
        if (tol < real(1e-20))
            throw precision_error("phi_series: tolerance unreachable on the real axis", 30);
        sum = flat_sum_dd(z.re, N, rounding);
    } else {
        real m2py = -two_pi() * z.im;
        for (long long n = 1; n <= N; ++n) {
            Complex rot = cis2pi(frac_mul(z.re, n * n));
            real inv = real(1) / (real(n) * real(n));
            if (z.im > 0) inv *= exp(m2py * n * n);
            sum += rot * inv;
        }
        rounding = (8 * real(N) + 16) * working_eps();
    }

    // divide by 2 pi i
    Complex value = sum / Complex(real(0), two_pi());

    real tail = 1 / (two_pi() * real(N));
    if (decay_truncated) {
        real t = exp(-two_pi() * z.im * (N + 1) * (N + 1)) / (two_pi() * real(N + 1) * real(N + 1));
        real ratio = exp(-two_pi() * z.im * (2 * N + 3));
        real decay_tail = t / (1 - ratio);
        if (decay_tail < tail) tail = decay_tail;
    }

    PhiValue out;
    out.value = value;
    out.est_error = tail + rounding;
    out.terms_used = N;
    return out;
}

PhiIncrement phi_increment_series(const real& x, const real& h, const real& tol) {
    PhiValue a = phi_series(Complex(x + h, real(0)), tol);
    PhiValue b = phi_series(Complex(x, real(0)), tol);
    PhiIncrement out;
    out.x = x;
    out.h = h;
    out.value = a.value - b.value;
    out.est_error = a.est_error + b.est_error;
    out.method = IncrementMethod::series_oracle;
    return out;
}

namespace {

struct LegResult {
    Complex value;
    real est;
};

// integral of theta(x_base + i t^2) 2 i t dt over t in [0, sqrt(height)],
// graded geometrically toward the t = 0 endpoint
LegResult vertical_leg(const real& x_base, const real& height, const real& leg_tol,
                       const ContourSpec& spec) {
    real T = sqrt(height);
    real t0 = leg_tol / 8;
    int bands = 1;
    if (t0 < T) bands = std::max(1, static_cast<int>(to_ll(ceil(log(T / t0) / log(real(2))))));
    real band_tol = leg_tol / (2 * bands);
    real theta_tol = leg_tol / (4 * height);
    int band_panels = std::max(4, spec.max_panels_per_leg / 16);

    LegResult out;
    real hi = T;
    for (int j = 0; j < bands; ++j) {
        real lo = hi / 2;
        auto integrand = [&](const real& t, real& err_out) -> Complex {
            ThetaResult th = theta_auto(UpperHalfPoint{x_base, t * t}, theta_tol);
            err_out = 2 * t * th.est_error;
            return Complex(real(0), 2 * t) * th.value;
        };
        PanelIntegral seg =
            integrate_refined(integrand, lo, hi, band_tol, spec.nodes_per_panel, band_panels);
        out.value += seg.value;
        out.est += seg.refinement_diff + seg.propagated_error;
        hi = lo;
    }
    // explicit bound on the unintegrated stub [0, hi]
    out.est += sqrt(real(2)) * hi + 3 * hi * hi;
    return out;
}

LegResult top_leg(const real& x_from, const real& h, const real& y, const real& leg_tol,
                  const ContourSpec& spec) {
    real theta_tol = leg_tol / (4 * fabs(h));
    auto integrand = [&](const real& u, real& err_out) -> Complex {
        ThetaResult th = theta_auto(UpperHalfPoint{x_from + u, y}, theta_tol);
        err_out = th.est_error;
        return th.value;
    };
    PanelIntegral seg = integrate_refined(integrand, real(0), h, leg_tol / 2,
                                          spec.nodes_per_panel, spec.max_panels_per_leg);
    LegResult out;
    out.value = seg.value;
    out.est = seg.refinement_diff + seg.propagated_error;
    return out;
}

} // namespace

PhiIncrement phi_increment_contour(const real& x, const real& h, const real& tol,
                                   const ContourSpec& spec) {
    real height = spec.height > 0 ? spec.height : fabs(h);
    if (h == 0) throw std::invalid_argument("phi_increment_contour: h must be nonzero");
    if (fabs(h) > real(0.5)) throw std::invalid_argument("phi_increment_contour: |h| must be <= 0.5");
    if (!(tol > 0)) throw std::invalid_argument("phi_increment_contour: tol must be > 0");

    // cancellation headroom: increments of size |h|^{3/4} against integrand
    // magnitudes |h|^{-1/2}
    double lh = -std::log10(fabs(h).convert_to<double>());
    double lt = -std::log10(tol.convert_to<double>());
    unsigned required = static_cast<unsigned>(std::ceil(std::max(0.0, lt) + 1.25 * std::max(0.0, lh) + 5));
    if (working_digits() < required)
        throw precision_error("phi_increment_contour: needs " + std::to_string(required) +
                                  " working digits at this h and tol",
                              required);

    real leg_tol = 2 * tol / 3;
    LegResult i1 = vertical_leg(x, height, leg_tol, spec);
    LegResult i2 = top_leg(x, h, height, leg_tol, spec);
    LegResult i3 = vertical_leg(x + h, height, leg_tol, spec);

    PhiIncrement out;
    out.x = x;
    out.h = h;
    out.value = Complex(-h / 2, real(0)) + (i1.value + i2.value - i3.value) / real(2);
    out.est_error = (i1.est + i2.est + i3.est) / 2;
    out.method = IncrementMethod::contour;
    return out;
}

PhiIncrement phi_increment_contour(const real& x, const real& h, const real& tol) {
    return phi_increment_contour(x, h, tol, ContourSpec{});
}

namespace detail {

PhiIncrement phi_increment_contour_height(const real& x, const real& h, const real& height,
                                          const real& tol) {
    ContourSpec spec;
    spec.height = height;
    return phi_increment_contour(x, h, tol, spec);
}

} // namespace detail

real phi_derivative_identity_check(const UpperHalfPoint& z, const real& step) {
    if (!(z.y >= 2 * step)) throw std::invalid_argument("phi_derivative_identity_check: need y >= 2 step");
    real tol_phi = step * step * step;
    if (tol_phi < real(1e-25)) tol_phi = real(1e-25);
    PhiValue up = phi_series(Complex(z.x + step, z.y), tol_phi);
    PhiValue dn = phi_series(Complex(z.x - step, z.y), tol_phi);
    Complex diff = (up.value - dn.value) / (2 * step);
    ThetaResult th = theta_direct(z, tol_phi);
    Complex rhs = (th.value - Complex(real(1), real(0))) / real(2);
    return abs(diff - rhs);
}

RealWithError riemann_f(const real& x, const real& tol) {
    PhiValue v = phi_series(Complex(x / 2, real(0)), tol / (two_pi() + 1));
    RealWithError out;
    out.value = two_pi() * v.value.re;
    out.est_error = two_pi() * v.est_error;
    return out;
}

} // namespace rphi
