#pragma once

#include "riemannphi/contfrac.hpp"
#include "riemannphi/types.hpp"

#include <vector>

namespace rphi {

struct HoelderSample {
    real h;
    Complex increment;     // phi(x+h) - phi(x)
    real est_error;
};

struct HoelderFit {
    CertifiedReal x;
    real exponent_raw = 0;        // slope of log|increment| vs log|h|
    real exponent_detrended = 0;  // same with the -h/2 term removed
    real fit_residual = 0;        // rms residual of the selected fit
    bool envelope = false;
    bool sane = true;             // exponents inside the [0.3, 2.0] window
    std::vector<HoelderSample> samples;
    real h_min, h_max;
};

HoelderFit estimate_alpha(const CertifiedReal& x, const real& h_min, const real& h_max,
                          int samples_per_decade, bool detrend, bool envelope);

enum class AlphaSource { rational_half, rational_differentiable, quadratic_exact, tau_window };

struct PredictedAlpha {
    real alpha;
    AlphaSource source;
    // for differentiable rationals (q = 2 mod 4) the two natural readings:
    real raw_exponent = 0, detrended_exponent = 0;
    real tau = 0; // the tau the prediction used, when irrational
};

PredictedAlpha predicted_alpha(const CertifiedReal& x, int depth);

struct WitnessEntry {
    int l;
    Rational r;
    real x_l;          // lambda |rho - r_l|
    real h_l;          // the chosen step, r_l - rho or r_l + x_l - rho
    real measured;     // |phi(rho + h_l) - phi(rho)|
    real tau_l;
    real floor_exponent; // 1/2 + 1/(2 tau_l)
    real ratio;          // measured / |h_l|^{floor_exponent}
};

struct WitnessReport {
    CertifiedReal rho;
    std::vector<WitnessEntry> entries;
    real delta_floor;  // running minimum ratio
    real min_ratio, max_ratio;
};

WitnessReport witness_check(const CertifiedReal& rho, const std::vector<int>& l_indices,
                            const real& lambda);

} // namespace rphi
