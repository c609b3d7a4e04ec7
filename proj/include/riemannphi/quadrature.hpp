#pragma once

#include "riemannphi/types.hpp"

#include <functional>
#include <vector>

namespace rphi {

// Gauss-Legendre nodes and weights on [-1, 1], computed at the working
// precision by Newton iteration on P_n and cached per (n, digits).
struct GaussLegendreRule {
    std::vector<real> nodes;
    std::vector<real> weights;
};

const GaussLegendreRule& gauss_legendre(int n);

struct PanelIntegral {
    Complex value;
    real refinement_diff;  // |last level - previous level|, the error estimate
    real propagated_error; // sum of |w| * per-node integrand error bounds
    long evaluations = 0;
};

// Composite Gauss-Legendre over [a, b] (a > b allowed; orientation is signed)
// with dyadic panel refinement until two successive levels agree within tol.
// The integrand reports its own evaluation error bound through `err_out`.
using ComplexIntegrand = std::function<Complex(const real& t, real& err_out)>;

PanelIntegral integrate_refined(const ComplexIntegrand& f, const real& a, const real& b,
                                const real& tol, int nodes_per_panel = 16,
                                int max_panels = 4096);

} // namespace rphi
