#include "riemannphi/hoelder.hpp"

#include "riemannphi/phi.hpp"

#include <algorithm>
#include <cmath>

namespace rphi {

namespace {

real contour_tol_for(const real& habs) {
    // resolve the increment (at worst ~|h|^{3/2}) to about three figures
    real t = pow(habs, real(1.6)) / 1000;
    if (t > real(1e-8)) t = real(1e-8);
    if (t < real(1e-16)) t = real(1e-16);
    return t;
}

struct FitResult {
    real slope;
    real residual;
    size_t points;
};

FitResult fit_loglog(const std::vector<std::pair<real, real>>& pts) {
    // least squares on (log|h|, log mag)
    real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [lx, ly] : pts) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    real n = real(static_cast<long long>(pts.size()));
    real denom = n * sxx - sx * sx;
    real slope = (n * sxy - sx * sy) / denom;
    real intercept = (sy - slope * sx) / n;
    real rss = 0;
    for (const auto& [lx, ly] : pts) {
        real r = ly - (slope * lx + intercept);
        rss += r * r;
    }
    return FitResult{slope, sqrt(rss / n), pts.size()};
}

// keep only running-maximum records, walking from small |h| upward
std::vector<std::pair<real, real>> envelope_of(std::vector<std::pair<real, real>> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<real, real>> env;
    for (const auto& p : pts) {
        if (env.empty() || p.second > env.back().second) env.push_back(p);
    }
    return env;
}

} // namespace

HoelderFit estimate_alpha(const CertifiedReal& x, const real& h_min, const real& h_max,
                          int samples_per_decade, bool detrend, bool envelope) {
    if (!(h_min > 0 && h_min < h_max && h_max <= real(0.1)))
        throw std::invalid_argument("estimate_alpha: need 0 < h_min < h_max <= 0.1");
    if (samples_per_decade < 1) throw std::invalid_argument("estimate_alpha: samples_per_decade >= 1");
    if (x.width() > h_min / 1000)
        throw precision_error("estimate_alpha: input enclosure too wide for h_min",
                              x.value_digits + 10);
    {
        // fail early rather than in the middle of the grid
        real probe_tol = contour_tol_for(h_min);
        double lh = -std::log10(h_min.convert_to<double>());
        double lt = -std::log10(probe_tol.convert_to<double>());
        unsigned required = static_cast<unsigned>(std::ceil(lt + 1.25 * lh + 5));
        if (working_digits() < required)
            throw precision_error("estimate_alpha: precision insufficient at h_min (need " +
                                      std::to_string(required) + " digits)",
                                  required);
    }

    real xm = x.midpoint();
    real decades = log10(h_max / h_min);
    int steps = std::max(1, static_cast<int>(std::ceil(
                                 decades.convert_to<double>() * samples_per_decade)));

    HoelderFit out;
    out.x = x;
    out.envelope = envelope;
    out.h_min = h_min;
    out.h_max = h_max;

    std::vector<std::pair<real, real>> raw_pts, det_pts;
    for (int j = 0; j <= steps; ++j) {
        real habs = h_max * pow(h_min / h_max, real(j) / steps);
        for (int sign = 0; sign < 2; ++sign) {
            real h = sign == 0 ? habs : -habs;
            PhiIncrement inc = phi_increment_contour(xm, h, contour_tol_for(habs));
            out.samples.push_back(HoelderSample{h, inc.value, inc.est_error});
            real raw_mag = abs(inc.value);
            real det_mag = abs(inc.value + Complex(h / 2, real(0)));
            real lh = log(habs);
            if (raw_mag > 0) raw_pts.emplace_back(lh, log(raw_mag));
            if (det_mag > 0) det_pts.emplace_back(lh, log(det_mag));
        }
    }

    auto fit_of = [&](std::vector<std::pair<real, real>> pts) {
        if (envelope) pts = envelope_of(std::move(pts));
        if (pts.size() < 6)
            throw convergence_error("estimate_alpha: degenerate fit, fewer than 6 usable samples");
        return fit_loglog(pts);
    };
    FitResult raw_fit = fit_of(raw_pts);
    FitResult det_fit = fit_of(det_pts);
    out.exponent_raw = raw_fit.slope;
    out.exponent_detrended = det_fit.slope;
    out.fit_residual = detrend ? det_fit.residual : raw_fit.residual;
    out.sane = out.exponent_raw >= real(0.3) && out.exponent_raw <= real(2.0);
    return out;
}

PredictedAlpha predicted_alpha(const CertifiedReal& x, int depth) {
    PredictedAlpha out;
    if (x.tag == InputKind::rational) {
        const Rational& r = *x.rat;
        if (r.q % 4 == 2) {
            out.source = AlphaSource::rational_differentiable;
            out.alpha = 1; // the literal reading of the Hoelder definition: the -h/2 term
            out.raw_exponent = 1;
            out.detrended_exponent = real(3) / 2;
        } else {
            out.source = AlphaSource::rational_half;
            out.alpha = real(1) / 2;
            out.raw_exponent = out.alpha;
            out.detrended_exponent = out.alpha;
        }
        return out;
    }
    if (x.tag == InputKind::quadratic) {
        out.source = AlphaSource::quadratic_exact;
        out.tau = 2;
        out.alpha = alpha_from_tau(out.tau); // 3/4
        return out;
    }
    TauEstimate te = tau_estimate(x, depth);
    out.source = AlphaSource::tau_window;
    out.tau = te.tau_hat < 2 ? real(2) : te.tau_hat; // finite-depth tau_n can dip toward 2
    out.alpha = alpha_from_tau(out.tau);
    return out;
}

WitnessReport witness_check(const CertifiedReal& rho, const std::vector<int>& l_indices,
                            const real& lambda) {
    if (!(lambda > 0 && lambda <= real(0.25)))
        throw std::invalid_argument("witness_check: lambda must be in (0, 0.25]");
    if (l_indices.empty()) throw std::invalid_argument("witness_check: no indices given");
    if (rho.tag == InputKind::rational)
        throw std::invalid_argument("witness_check: rho must be irrational");

    int max_l = *std::max_element(l_indices.begin(), l_indices.end());
    CfExpansion exp = cf_expand(rho, max_l + 1);

    WitnessReport out;
    out.rho = rho;
    real rho_mid = rho.midpoint();

    for (int l : l_indices) {
        const Convergent* c = nullptr;
        for (const auto& conv : exp.convergents)
            if (conv.n == l) c = &conv;
        if (!c)
            throw precision_error("witness_check: convergent " + std::to_string(l) +
                                      " not certified at this precision",
                                  rho.value_digits + 20);
        if (c->q_mod4 == 2)
            throw std::invalid_argument("witness_check: q_l = 2 mod 4 at l = " + std::to_string(l));
        if (!c->tau_defined || !c->tau_certified)
            throw precision_error("witness_check: tau not certified at l = " + std::to_string(l),
                                  rho.value_digits + 20);

        scoped_digits guard(std::max<unsigned>(working_digits(),
                                               static_cast<unsigned>(c->q.str().size()) * 2 + 25));
        real rl = real(c->p) / real(c->q);
        real dist = fabs(rho_mid - rl);
        if (dist < 100 * pow(real(10), -static_cast<int>(rho.value_digits)))
            throw precision_error("witness_check: |rho - r_l| below the precision floor at l = " +
                                      std::to_string(l),
                                  rho.value_digits + 20);
        real x_l = lambda * dist;
        real h_a = rl - rho_mid;
        real h_b = rl + x_l - rho_mid;

        auto measure = [&](const real& h) {
            real tol = pow(fabs(h), real(0.8)) / 1000;
            if (tol > real(1e-9)) tol = real(1e-9);
            PhiIncrement inc = phi_increment_contour(rho_mid, h, tol);
            return abs(inc.value);
        };
        real m_a = measure(h_a);
        real m_b = measure(h_b);

        WitnessEntry e;
        e.l = l;
        e.r = Rational(c->p, c->q);
        e.x_l = x_l;
        e.h_l = m_a >= m_b ? h_a : h_b;
        e.measured = m_a >= m_b ? m_a : m_b;
        e.tau_l = c->tau;
        e.floor_exponent = real(1) / 2 + 1 / (2 * c->tau);
        e.ratio = e.measured / pow(fabs(e.h_l), e.floor_exponent);
        out.entries.push_back(e);
    }

    out.min_ratio = out.entries.front().ratio;
    out.max_ratio = out.entries.front().ratio;
    for (const auto& e : out.entries) {
        out.min_ratio = std::min(out.min_ratio, e.ratio, [](const real& a, const real& b) { return a < b; });
        out.max_ratio = std::max(out.max_ratio, e.ratio, [](const real& a, const real& b) { return a < b; });
    }
    out.delta_floor = out.min_ratio;
    return out;
}

} // namespace rphi
