#pragma once

#include "riemannphi/theta.hpp"
#include "riemannphi/types.hpp"

namespace rphi {

struct PhiValue {
    Complex value;
    real est_error;
    long long terms_used = 0;
};

// phi(z) = sum_{n>=1} e(n^2 z) / (2 pi i n^2), valid on the closed upper
// half-plane (y >= 0). Tail bound 1/(2 pi N); term cap 1e8.
PhiValue phi_series(const Complex& z, const real& tol);

enum class IncrementMethod { contour, series_oracle };

// Quadrature knobs for the three-leg rectangle contour. height = 0 means the
// natural rectangle of height |h|; other heights give the same value by
// analyticity (used by the path-independence checks).
struct ContourSpec {
    int nodes_per_panel = 16;
    int max_panels_per_leg = 4096;
    real height = real(0);
};

struct PhiIncrement {
    real x, h;
    Complex value;
    real est_error;
    IncrementMethod method = IncrementMethod::contour;
};

// phi(x+h) - phi(x) through the rectangle contour: -h/2 + (I1 + I2 - I3)/2,
// with the vertical legs integrated in t after the z = i t^2 substitution.
PhiIncrement phi_increment_contour(const real& x, const real& h, const real& tol);
PhiIncrement phi_increment_contour(const real& x, const real& h, const real& tol,
                                   const ContourSpec& spec);

// Brute-force oracle: phi_series(x+h) - phi_series(x), doubled tail bound.
PhiIncrement phi_increment_series(const real& x, const real& h, const real& tol);

// |central difference of phi at z - (theta(z) - 1)/2|
real phi_derivative_identity_check(const UpperHalfPoint& z, const real& step);

struct RealWithError {
    real value;
    real est_error;
};

// f(x) = sum sin(n^2 pi x) / n^2 = 2 pi Re phi(x/2)
RealWithError riemann_f(const real& x, const real& tol);

namespace detail {
// Contour with an explicit rectangle height (Cauchy: value is height-independent).
PhiIncrement phi_increment_contour_height(const real& x, const real& h, const real& height,
                                          const real& tol);
} // namespace detail

} // namespace rphi
