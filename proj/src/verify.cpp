#include "riemannphi/verify.hpp"

#include "riemannphi/contfrac.hpp"
#include "riemannphi/hoelder.hpp"
#include "riemannphi/input.hpp"
#include "riemannphi/local.hpp"
#include "riemannphi/numtheory.hpp"
#include "riemannphi/phi.hpp"
#include "riemannphi/theta.hpp"

#include <random>
#include <sstream>

namespace rphi {

namespace {

double dbl(const real& x) { return x.convert_to<double>(); }

real uniform01(std::mt19937_64& rng) {
    return real(static_cast<double>(rng() >> 11) * 0x1p-53);
}

CheckResult make_result(const std::string& name, bool pass, const std::string& detail) {
    return CheckResult{name, pass, detail};
}

std::string worst_str(double worst, double limit) {
    std::ostringstream os;
    os << "worst " << worst << " (limit " << limit << ")";
    return os.str();
}

} // namespace

std::vector<CheckResult> verify_gauss(std::uint64_t seed, int qmax_closed, int qmax_general) {
    std::vector<CheckResult> out;
    set_working_digits(20); // the comparisons are at 64-bit-equivalent scale

    {
        double worst = 0;
        bool branch_ok = true;
        for (long long q = 1; q <= qmax_closed; ++q) {
            auto table = detail::unit_root_table(q);
            for (long long p = 1; p <= q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                GaussSumValue s = gauss_sum_closed(q, p);
                auto brute = detail::gauss_sum_brute_tab(q, p, 0, table);
                double d = dbl(abs(s.to_complex() - brute.value));
                if (d > worst) worst = d;
                cpp_int a2 = s.abs_squared();
                if (!(a2 == 0 || a2 == q || a2 == 2 * q)) branch_ok = false;
                if (q % 4 == 2 && !s.is_zero()) branch_ok = false;
            }
        }
        out.push_back(make_result("closed form vs brute force, q <= " + std::to_string(qmax_closed),
                                  worst <= 1e-9, worst_str(worst, 1e-9)));
        out.push_back(make_result("|S(q,p)|^2 in {0, q, 2q} exactly", branch_ok,
                                  branch_ok ? "all branches exact" : "branch value mismatch"));
    }

    {
        double worst = 0;
        for (long long q = 1; q <= qmax_general; ++q) {
            auto table = detail::unit_root_table(q);
            for (long long p = 1; p <= q; ++p) {
                if (std::gcd(p, q) != 1) continue;
                for (long long m = 0; m < q; ++m) {
                    GeneralGaussSum s = gauss_sum_general(q, p, m);
                    auto brute = detail::gauss_sum_brute_tab(q, p, m, table);
                    double d = dbl(abs(s.value - brute.value));
                    if (d > worst) worst = d;
                }
            }
        }
        out.push_back(make_result("generalized sums vs brute force, q <= " +
                                      std::to_string(qmax_general) + ", all m",
                                  worst <= 1e-9, worst_str(worst, 1e-9)));
    }

    {
        std::mt19937_64 rng(seed);
        double worst = 0;
        for (int i = 0; i < 500; ++i) {
            long long q = 1 + static_cast<long long>(rng() % 300);
            long long p = 1 + static_cast<long long>(rng() % q);
            if (std::gcd(p, q) != 1) continue;
            long long m = static_cast<long long>(rng() % q);
            GeneralGaussSum a = gauss_sum_general(q, p, m);
            GeneralGaussSum b = gauss_sum_general(q, p, m + q);
            double d = dbl(abs(a.value - b.value));
            if (d > worst) worst = d;
        }
        out.push_back(make_result("S(q,p,m) is q-periodic in m (sampled)", worst <= 1e-15,
                                  worst_str(worst, 1e-15)));
    }

    {
        std::mt19937_64 rng(seed + 1);
        bool ok = true;
        for (int i = 0; i < 2000; ++i) {
            long long q = 2 * static_cast<long long>(rng() % 400) + 1;
            long long p1 = static_cast<long long>(rng() % 50);
            long long p2 = static_cast<long long>(rng() % 50);
            if (jacobi_symbol(p1 * p2, q) != jacobi_symbol(p1, q) * jacobi_symbol(p2, q)) ok = false;
        }
        out.push_back(make_result("jacobi symbol completely multiplicative (sampled)", ok,
                                  ok ? "2000 triples" : "counterexample found"));
    }

    set_working_digits(40);
    return out;
}

std::vector<CheckResult> verify_theta(std::uint64_t seed) {
    std::vector<CheckResult> out;
    set_working_digits(40);

    {
        // dual representation across anchors q <= 50, offsets, and aspect ratios
        double worst_ratio = 0; // |diff| / (est1 + est2)
        long checked = 0;
        for (long long q = 1; q <= 50; ++q) {
            long long p = 1;
            while (std::gcd(p, q) != 1) ++p;
            for (double az : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
                for (double ratio : {1.0, 0.5, 0.1}) {
                    real y = real(az) * real(ratio);
                    real xoff = sqrt(real(az) * real(az) - y * y);
                    ThetaResult nr;
                    try {
                        nr = theta_near_rational(p, q, Complex(xoff, y), real("1e-10"), 2000000);
                    } catch (const series_not_effective&) {
                        continue;
                    }
                    ThetaResult dir =
                        theta_direct(UpperHalfPoint{real(p) / real(q) + xoff, y}, real("1e-10"));
                    double r = dbl(abs(nr.value - dir.value) / (nr.est_error + dir.est_error));
                    if (r > worst_ratio) worst_ratio = r;
                    ++checked;
                }
            }
        }
        std::ostringstream os;
        os << "worst |diff|/(est1+est2) " << worst_ratio << " over " << checked << " points";
        out.push_back(make_result("dual representation within combined est_error",
                                  worst_ratio <= 1.0, os.str()));
    }

    {
        std::mt19937_64 rng(seed);
        bool ok = true;
        for (int i = 0; i < 100; ++i) {
            real x = uniform01(rng);
            real y = uniform01(rng);
            if (y < real("0.0005")) y += real("0.0005");
            ThetaResult t = theta_auto(UpperHalfPoint{x, y}, real("1e-8"));
            if (dbl(abs(t.value)) - dbl(t.est_error) > dbl(theta_magnitude_bound(y))) ok = false;
        }
        out.push_back(make_result("elementary bound |theta| <= 1 + 2e^{-2 pi y} + (2y)^{-1/2}", ok,
                                  ok ? "100 random points" : "bound violated"));
    }

    {
        std::mt19937_64 rng(seed + 7);
        double worst = 0;
        for (int i = 0; i < 25; ++i) {
            real x = uniform01(rng);
            real y = uniform01(rng) / 2 + real("0.01");
            ThetaResult a = theta_direct(UpperHalfPoint{x, y}, real("1e-11"));
            ThetaResult b = theta_direct(UpperHalfPoint{x + 1, y}, real("1e-11"));
            double d = dbl(abs(a.value - b.value) / (a.est_error + b.est_error + real("1e-30")));
            if (d > worst) worst = d;
        }
        out.push_back(make_result("periodicity theta(z+1) = theta(z)", worst <= 1.0,
                                  worst_str(worst, 1.0)));
    }

    {
        // sampled growth bound near the golden ratio: tau = 2, eps = 0.05,
        // ratio capped by an implementation-chosen threshold of 10
        real gold("0.6180339887498948482045868343656381177203");
        real eps("0.05");
        real e1 = real(1) / 4 - eps - real(1) / 2; // exponent of |z|
        real e2 = real(1) / 4 - eps;
        double worst = 0;
        for (int j = 0; j <= 10; ++j) {
            real az = pow(real(10), real(-8) + j * real("0.5"));
            for (double ratio : {1.0, 0.1}) {
                real y = az * real(ratio);
                real xoff = sqrt(az * az - y * y);
                ThetaResult t = theta_auto(UpperHalfPoint{gold + xoff, y}, real("1e-8"));
                real bound = pow(az, e1) + pow(y, real("-0.5")) * pow(az, e2);
                double r = dbl(abs(t.value) / bound);
                if (r > worst) worst = r;
            }
        }
        out.push_back(make_result("sampled theta growth bound near the golden ratio",
                                  worst <= 10.0, worst_str(worst, 10.0)));
    }

    return out;
}

std::vector<CheckResult> verify_expansion(std::uint64_t seed) {
    (void)seed;
    std::vector<CheckResult> out;
    set_working_digits(40);

    {
        double worst = 0;
        std::vector<std::pair<int, int>> pairs = {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 4}};
        for (auto [p, q] : pairs) {
            RationalExpansion e = expansion_constants(p, q);
            real x = real(p) / real(q);
            for (int k = 8; k <= 20; k += 2) {
                for (int sign : {1, -1}) {
                    real h = sign * pow(real(2), -k);
                    PhiIncrement inc = phi_increment_contour(x, h, real("2e-9"));
                    ComplexWithError R = remainder_term(p, q, h, real("2e-9"));
                    Complex sqrt_term = h < 0 ? e.c_minus * sqrt(-h) : e.c_plus * sqrt(h);
                    Complex recon = sqrt_term - Complex(h / 2, real(0)) + R.value;
                    double d = dbl(abs(inc.value - recon));
                    if (d > worst) worst = d;
                }
            }
        }
        out.push_back(make_result("reconstruction inc = C-part - h/2 + R at five rationals",
                                  worst <= 1e-8, worst_str(worst, 1e-8)));
    }

    {
        bool ok = true;
        std::ostringstream os;
        for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {1, 2}}) {
            real sx = 0, sy = 0, sxx = 0, sxy = 0;
            int n = 0;
            for (int k = 8; k <= 24; ++k) {
                real h = pow(real(2), -k);
                real tol = pow(h, real("1.5")) * real("2e-5") + real("1e-13");
                ComplexWithError R = remainder_term(p, q, h, tol);
                real lx = log(h), ly = log(abs(R.value));
                sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
                ++n;
            }
            real slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            os << "slope(" << p << "/" << q << ") " << dbl(slope) << " ";
            if (std::abs(dbl(slope) - 1.5) > 0.05) ok = false;
        }
        out.push_back(make_result("remainder log-log slope 1.5 +- 0.05", ok, os.str()));
    }

    {
        real h = pow(real(2), -12);
        double worst = 0;
        for (int sign : {1, -1}) {
            real hs = sign * h;
            AsymptoticExpansion a = asymptotic_terms(1, 3, hs, 2, real("1e-11"));
            ComplexWithError R = remainder_term(1, 3, hs, real("1e-11"));
            double d = dbl(abs(a.total - R.value) / (a.est_error + R.est_error + real("1e-13")));
            if (d > worst) worst = d;
        }
        out.push_back(make_result("asymptotic series telescopes at K = 2", worst <= 1.0,
                                  worst_str(worst, 1.0)));
    }

    return out;
}

std::vector<CheckResult> verify_table1(std::uint64_t seed) {
    (void)seed;
    std::vector<CheckResult> out;
    set_working_digits(40);
    real habs("1e-6");

    std::vector<std::pair<int, int>> reps = {{1, 5}, {1, 3}, {1, 2}, {1, 4}, {3, 4}};
    bool all_ok = true;
    std::ostringstream os;
    for (auto [p, q] : reps) {
        RationalExpansion e = expansion_constants(p, q);
        real x = real(p) / real(q);
        for (int sign : {-1, 1}) {
            real h = sign * habs;
            PhiIncrement inc = phi_increment_contour(x, h, real("1e-9"));
            real coeff = sign < 0 ? e.re_coeff_left : e.re_coeff_right;
            if (coeff != 0) {
                real lead = coeff * sqrt(habs);
                double rel = std::abs(dbl(inc.value.re / lead) - 1.0);
                bool sign_ok = dbl(inc.value.re) * dbl(lead) > 0;
                if (rel > 0.02 || !sign_ok) all_ok = false;
                os << p << "/" << q << (sign < 0 ? " left" : " right") << " rel " << rel << "; ";
            } else {
                real resid = fabs(inc.value.re + h / 2);
                real bound = 10 * pow(real(q), real("1.5")) * pow(habs, real("1.5"));
                if (dbl(resid) > dbl(bound)) all_ok = false;
                os << p << "/" << q << (sign < 0 ? " left" : " right") << " lin "
                   << dbl(resid / bound) << "; ";
            }
        }
    }
    out.push_back(make_result("table rows: signs, 2% coefficients, linear-side bounds", all_ok,
                              os.str()));
    return out;
}

std::vector<CheckResult> verify_contfrac(std::uint64_t seed) {
    (void)seed;
    std::vector<CheckResult> out;
    set_working_digits(40);

    {
        bool ok = true;
        for (const char* spec :
             {"quad:0,1,(1)", "quad:0,(2)", "rat:3/4", "dec:0.6180339887498948482045868343656381177203",
              "quad:0,(1,2)"}) {
            CfExpansion e = cf_expand(parse_xspec(spec), 22);
            for (size_t i = 0; i + 1 < e.convergents.size(); ++i) {
                cpp_int det = e.convergents[i + 1].p * e.convergents[i].q -
                              e.convergents[i].p * e.convergents[i + 1].q;
                cpp_int want = e.convergents[i].n % 2 == 0 ? 1 : -1;
                if (det != want) ok = false;
                if (e.convergents[i].q_mod4 == 2 && e.convergents[i + 1].q_mod4 == 2) ok = false;
            }
        }
        out.push_back(make_result("determinant identity exact; no consecutive q = 2 mod 4", ok,
                                  ok ? "5 inputs, depth 22" : "identity violated"));
    }

    {
        TauEstimate t =
            tau_estimate(parse_xspec("dec:0.6180339887498948482045868343656381177203"), 25);
        bool ok = dbl(t.tau_hat) >= 2.0 && dbl(t.tau_hat) <= 2.1;
        std::ostringstream os;
        os << "tau_hat " << dbl(t.tau_hat);
        out.push_back(make_result("golden-ratio tau window at depth 25 inside [2.0, 2.1]", ok, os.str()));
    }

    {
        TauEstimate t = tau_estimate(parse_xspec("quad:0,(2)"), 25);
        bool ok = dbl(t.tau_hat) >= 2.0 && dbl(t.tau_hat) <= 2.1 && t.has_exact;
        std::ostringstream os;
        os << "tau_hat " << dbl(t.tau_hat) << ", exact 2 reported";
        out.push_back(make_result("sqrt(2)-1 tau window at depth 25 inside [2.0, 2.1]", ok, os.str()));
    }

    return out;
}

std::vector<CheckResult> verify_witness(std::uint64_t seed) {
    (void)seed;
    std::vector<CheckResult> out;
    set_working_digits(40);

    {
        WitnessReport w = witness_check(parse_xspec("quad:0,1,(1)"), {5, 7, 10, 11}, real("0.1"));
        bool ok = dbl(w.min_ratio) >= 0.05 && dbl(w.max_ratio / w.min_ratio) <= 100;
        std::ostringstream os;
        os << "ratios in [" << dbl(w.min_ratio) << ", " << dbl(w.max_ratio) << "]";
        out.push_back(make_result("golden-ratio witness floors", ok, os.str()));
    }

    {
        set_working_digits(60);
        WitnessReport w = witness_check(
            parse_xspec("dec:0.1001000000000001000000000000000000000000000000000000000000000000100000"
                        "000000000000"),
            {1, 3, 4}, real("0.1"));
        bool ok = dbl(w.min_ratio) > 0 && dbl(w.max_ratio / w.min_ratio) <= 100;
        std::ostringstream os;
        os << "ratios in [" << dbl(w.min_ratio) << ", " << dbl(w.max_ratio) << "] down to h = 1e-16";
        out.push_back(make_result("tau-4 number witness floors at its coarsest scales", ok, os.str()));
        set_working_digits(40);
    }

    return out;
}

} // namespace rphi
