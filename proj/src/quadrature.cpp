#include "riemannphi/quadrature.hpp"

#include <map>

namespace rphi {

namespace {

GaussLegendreRule compute_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    real tolerance = pow(real(10), -static_cast<int>(working_digits())) * 4;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-like seed; quadratic convergence from a
        // double-precision start reaches full precision in a few steps.
        real x = cos(pi() * (real(i) + real(0.75)) / (real(n) + real(0.5)));
        real dp = 0;
        for (int iter = 0; iter < 60; ++iter) {
            real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            real dx = p1 / dp;
            x -= dx;
            if (fabs(dx) < tolerance) {
                // one clean-up step, then stop
                p0 = 1; p1 = x;
                for (int k = 2; k <= n; ++k) {
                    real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1);
                x -= p1 / dp;
                break;
            }
        }
        real w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0;
    return rule;
}

} // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    static std::map<std::pair<int, unsigned>, GaussLegendreRule> cache;
    auto key = std::make_pair(n, working_digits());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_rule(n)).first;
    return it->second;
}

PanelIntegral integrate_refined(const ComplexIntegrand& f, const real& a, const real& b,
                                const real& tol, int nodes_per_panel, int max_panels) {
    const GaussLegendreRule& rule = gauss_legendre(nodes_per_panel);
    PanelIntegral out;
    Complex prev;
    bool have_prev = false;
    for (int panels = 1; panels <= max_panels; panels *= 2) {
        Complex acc;
        real prop = 0;
        real width = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            real left = a + width * p;
            real half = width / 2;
            real mid = left + half;
            for (int i = 0; i < nodes_per_panel; ++i) {
                real t = mid + half * rule.nodes[i];
                real ferr = 0;
                Complex v = f(t, ferr);
                real w = rule.weights[i] * half;
                acc += v * w;
                prop += fabs(w) * ferr;
                ++out.evaluations;
            }
        }
        if (have_prev) {
            real diff = abs(acc - prev);
            out.value = acc;
            out.refinement_diff = diff;
            out.propagated_error = prop;
            if (diff <= tol) return out;
        } else {
            out.value = acc;
            out.propagated_error = prop;
        }
        prev = acc;
        have_prev = true;
    }
    throw convergence_error("integrate_refined: refinement depth exhausted, achieved " +
                            fmt(out.refinement_diff, 3));
}

} // namespace rphi
