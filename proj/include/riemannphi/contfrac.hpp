#pragma once

#include "riemannphi/numtheory.hpp"
#include "riemannphi/types.hpp"

#include <optional>
#include <vector>

namespace rphi {

enum class InputKind { rational, quadratic, decimal };

// A real input carried as an interval enclosure, from which continued-fraction
// terms can be certified.
struct CertifiedReal {
    real lo, hi;
    InputKind tag = InputKind::decimal;
    std::optional<Rational> rat;               // rational tag
    std::vector<cpp_int> quad_pre;             // quadratic tag: leading terms
    std::vector<cpp_int> quad_period;          // quadratic tag: repeating block
    unsigned value_digits = 0;                 // digits the enclosure is good for

    static CertifiedReal from_rational(const Rational& r);
    static CertifiedReal from_decimal(const std::string& literal);
    static CertifiedReal from_quadratic(std::vector<cpp_int> pre, std::vector<cpp_int> period,
                                        unsigned digits = 0);

    real midpoint() const { return (lo + hi) / 2; }
    real width() const { return hi - lo; }
    // Re-derives the enclosure at higher precision (rational and quadratic tags only).
    CertifiedReal refined(unsigned digits) const;
};

enum class Side { left, right, exact };

struct Convergent {
    cpp_int p, q;
    int n = 0;             // index; r_0 = a_0 / 1
    Side side = Side::exact;
    int q_mod4 = 0;
    // filled by tau_sequence / cf_expand:
    bool tau_defined = false;   // false when q = 1 or the convergent hits x exactly
    bool tau_certified = false; // enclosure separates x from r_n
    real tau = 0;
    real tau_lo = 0, tau_hi = 0;

    Rational value() const { return Rational(p, q); }
};

struct CfExpansion {
    std::vector<cpp_int> quotients;     // a_0, a_1, ...
    std::vector<Convergent> convergents;
    bool truncated = false;             // stopped before max_terms: enclosure too wide
    int certified_terms = 0;            // quotients beyond a_0 that were certified
    std::string note;
};

// Convergents r_0..r_N with N <= max_terms (max_terms counts the terms past a_0).
CfExpansion cf_expand(const CertifiedReal& x, int max_terms);

// tau_n with interval-derived error bars; mutates nothing, returns a parallel list.
std::vector<Convergent> tau_sequence(const CertifiedReal& x, std::vector<Convergent> convergents);

struct TauEstimate {
    real tau_hat = 0;
    bool has_exact = false;
    real exact_value = 0;               // 2 for quadratic irrationals
    std::vector<int> filtered_indices;  // q_n != 2 mod 4, tau certified
    std::vector<real> filtered_tau;
    std::vector<int> window_indices;    // the tail window the max is taken over
    bool truncated = false;
};

TauEstimate tau_estimate(const CertifiedReal& x, int terms);

// alpha = 1/2 + 1/(2 tau); accepts tau = +inf, rejects tau < 2.
real alpha_from_tau(const real& tau);

} // namespace rphi
