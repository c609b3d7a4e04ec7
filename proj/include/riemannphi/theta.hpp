#pragma once

#include "riemannphi/numtheory.hpp"
#include "riemannphi/types.hpp"

#include <vector>

namespace rphi {

struct UpperHalfPoint {
    real x;
    real y; // strictly positive
};

enum class ThetaMethod { direct, near_rational };

struct ThetaResult {
    Complex value;
    real est_error;      // rigorous truncation tail + rounding budget
    ThetaMethod method = ThetaMethod::direct;
    long long anchor_p = 0, anchor_q = 0;
    long long terms_used = 0;
};

// theta(z) = 1 + 2 sum_{n>=1} e(n^2 z), truncated with a geometric tail bound.
ThetaResult theta_direct(const UpperHalfPoint& z, const real& tol);

// Gauss-sum/Poisson series at the anchor p/q: theta(p/q + zeta) through S(q,p,m)
// and exp(-i pi m^2 / (2 q^2 zeta)); throws series_not_effective when more than
// max_terms would be needed.
ThetaResult theta_near_rational(long long p, long long q, const Complex& zeta, const real& tol,
                                long long max_terms);

// Chooses between the direct series and the best rational anchor from the
// continued fraction of x, by predicted term count.
ThetaResult theta_auto(const UpperHalfPoint& z, const real& tol);

// |theta(x+iy)| <= 1 + 2 exp(-2 pi y) + (2y)^{-1/2}
real theta_magnitude_bound(const real& y);

namespace detail {
// Convergents p/q of x (treated exactly), in increasing q, capped.
std::vector<std::pair<long long, long long>> rational_anchors(const real& x, long long q_cap);
} // namespace detail

} // namespace rphi
