#include "riemannphi/contfrac.hpp"
#include "riemannphi/hoelder.hpp"
#include "riemannphi/input.hpp"
#include "riemannphi/local.hpp"
#include "riemannphi/numtheory.hpp"
#include "riemannphi/phi.hpp"
#include "riemannphi/theta.hpp"
#include "riemannphi/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

using namespace rphi;
using ordered_json = nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 1 verification failure, 2 usage error, 3 cross-check
// failure, 4 precision shortfall
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCrossCheck = 3;
constexpr int kExitPrecision = 4;

struct RunConfig {
    unsigned digits = 40;
    double tol = 1e-10;
    std::string output = "json";
    std::uint64_t seed = 12345;
};

unsigned fmt_digits(const RunConfig& cfg) { return std::min(cfg.digits, 32u); }

std::string num(const RunConfig& cfg, const real& x) { return fmt(x, fmt_digits(cfg)); }

ordered_json cnum_json(const RunConfig& cfg, const Complex& v, const real& est) {
    ordered_json j;
    j["re"] = num(cfg, v.re);
    j["im"] = num(cfg, v.im);
    j["est_error"] = num(cfg, est);
    return j;
}

void emit(const RunConfig& cfg, const ordered_json& j) {
    if (cfg.output == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        // text: flat key: value lines, insertion order
        std::function<void(const std::string&, const ordered_json&)> walk =
            [&](const std::string& prefix, const ordered_json& node) {
                if (node.is_object()) {
                    for (auto it = node.begin(); it != node.end(); ++it)
                        walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
                } else if (node.is_array()) {
                    int i = 0;
                    for (const auto& v : node) walk(prefix + "[" + std::to_string(i++) + "]", v);
                } else {
                    std::cout << prefix << ": "
                              << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
                }
            };
        walk("", j);
    }
}

real real_tol(const RunConfig& cfg) { return real(cfg.tol); }

int run_gauss_sum(const RunConfig& cfg, long long q, long long p, long long m, bool has_m,
                  bool brute) {
    ordered_json j;
    j["command"] = "gauss-sum";
    j["q"] = q;
    j["p"] = p;
    Complex value;
    real est = 0;
    if (!has_m) {
        GaussSumValue s = gauss_sum_closed(q, p);
        value = s.to_complex();
        j["exact"] = s.exact_string();
        j["branch"] = s.branch == GaussSumValue::Branch::odd_q     ? "q_odd"
                      : s.branch == GaussSumValue::Branch::q2mod4 ? "q_2mod4"
                                                                  : "q_0mod4";
        j["abs_squared"] = s.abs_squared().str();
        est = 4 * working_eps() * (abs(value) + 1);
    } else {
        j["m"] = m;
        GeneralGaussSum s = gauss_sum_general(q, p, m);
        value = s.value;
        est = s.est_error;
        j["reduction"] = s.reduction == GeneralGaussSum::Reduction::shift          ? "shift"
                         : s.reduction == GeneralGaussSum::Reduction::odd_residues ? "odd_residues"
                                                                                   : "zero";
        j["rotation"] = "e(-" + s.rot_num.str() + "/" + s.rot_den.str() + ")";
        j["scale"] = s.scale;
        j["base"] = s.base.exact_string();
    }
    j["value"] = cnum_json(cfg, value, est);
    if (brute) {
        ComplexWithError b = has_m ? gauss_sum_general_brute(q, p, m) : gauss_sum_brute(q, p);
        j["brute"] = cnum_json(cfg, b.value, b.est_error);
        real diff = abs(value - b.value);
        j["cross_check_diff"] = num(cfg, diff);
        if (diff > real("1e-9") + b.est_error + est) {
            j["cross_check"] = "FAIL";
            emit(cfg, j);
            return kExitCrossCheck;
        }
        j["cross_check"] = "ok";
    }
    emit(cfg, j);
    return kExitOk;
}

int run_theta(const RunConfig& cfg, const std::string& xs, const std::string& ys,
              const std::string& method, long long p, long long q) {
    UpperHalfPoint z{real(xs), real(ys)};
    ThetaResult t;
    if (method == "direct") {
        t = theta_direct(z, real_tol(cfg));
    } else if (method == "near") {
        if (q < 1) throw CLI::ValidationError("--method near requires --p and --q");
        t = theta_near_rational(p, q, Complex(z.x - real(p) / real(q), z.y), real_tol(cfg),
                                4000000);
    } else {
        t = theta_auto(z, real_tol(cfg));
    }
    ordered_json j;
    j["command"] = "theta";
    j["x"] = xs;
    j["y"] = ys;
    j["value"] = cnum_json(cfg, t.value, t.est_error);
    j["method"] = t.method == ThetaMethod::direct ? "direct" : "near_rational";
    if (t.method == ThetaMethod::near_rational) {
        j["anchor_p"] = t.anchor_p;
        j["anchor_q"] = t.anchor_q;
    }
    j["terms_used"] = t.terms_used;
    emit(cfg, j);
    return kExitOk;
}

int run_phi(const RunConfig& cfg, const std::string& xs, const std::string& hs,
            const std::string& ys, bool series_method) {
    ordered_json j;
    j["command"] = "phi";
    j["x"] = xs;
    real x(xs);
    if (hs.empty()) {
        real y = ys.empty() ? real(0) : real(ys);
        if (!ys.empty()) j["y"] = ys;
        PhiValue v = phi_series(Complex(x, y), real_tol(cfg));
        j["value"] = cnum_json(cfg, v.value, v.est_error);
        j["method"] = "series";
        j["terms_used"] = v.terms_used;
    } else {
        real h(hs);
        j["h"] = hs;
        PhiIncrement inc = series_method ? phi_increment_series(x, h, real_tol(cfg))
                                         : phi_increment_contour(x, h, real_tol(cfg));
        j["increment"] = cnum_json(cfg, inc.value, inc.est_error);
        j["abs_increment"] = num(cfg, abs(inc.value));
        j["method"] = inc.method == IncrementMethod::contour ? "contour" : "series_oracle";
    }
    emit(cfg, j);
    return kExitOk;
}

int run_expand(const RunConfig& cfg, const std::string& pq, const std::string& hs, int K) {
    auto slash = pq.find('/');
    if (slash == std::string::npos) throw CLI::ValidationError("expand expects p/q");
    cpp_int p(pq.substr(0, slash)), q(pq.substr(slash + 1));
    RationalExpansion e = expansion_constants(p, q);
    ordered_json j;
    j["command"] = "expand";
    j["at"] = e.at.p.str() + "/" + e.at.q.str();
    j["gauss_sum"] = e.S.exact_string();
    j["c_minus"] = cnum_json(cfg, e.c_minus, 4 * working_eps());
    j["c_plus"] = cnum_json(cfg, e.c_plus, 4 * working_eps());
    j["differentiable_phi"] = e.differentiable_phi;
    const char* row = e.row == TableRow::q1      ? "q1"
                      : e.row == TableRow::q3    ? "q3"
                      : e.row == TableRow::q2    ? "q2"
                      : e.row == TableRow::q0_p1 ? "q0_p1"
                                                 : "q0_p3";
    j["table_row"] = row;
    j["re_coeff_left"] = num(cfg, e.re_coeff_left);
    j["re_coeff_right"] = num(cfg, e.re_coeff_right);
    if (!hs.empty()) {
        real h(hs);
        ComplexWithError R = remainder_term(p, q, h, real_tol(cfg));
        j["h"] = hs;
        j["remainder"] = cnum_json(cfg, R.value, R.est_error);
        if (K >= 0) {
            AsymptoticExpansion a = asymptotic_terms(p, q, h, K, real_tol(cfg));
            ordered_json terms = ordered_json::array();
            for (const auto& t : a.terms) terms.push_back(cnum_json(cfg, t, a.est_error));
            j["asymptotic_terms"] = terms;
            j["integral_tail"] = cnum_json(cfg, a.integral_tail, a.est_error);
            j["telescoped_total"] = cnum_json(cfg, a.total, a.est_error);
        }
    }
    emit(cfg, j);
    return kExitOk;
}

int run_cf(const RunConfig& cfg, const std::string& xspec, int terms) {
    CertifiedReal x = parse_xspec(xspec);
    CfExpansion e = cf_expand(x, terms);
    ordered_json j;
    j["command"] = "cf";
    j["x"] = xspec;
    j["terms_requested"] = terms;
    j["terms_certified"] = e.certified_terms;
    j["truncated"] = e.truncated;
    if (!e.note.empty()) j["note"] = e.note;
    ordered_json quot = ordered_json::array();
    for (const auto& a : e.quotients) quot.push_back(a.str());
    j["quotients"] = quot;
    ordered_json convs = ordered_json::array();
    for (const auto& c : e.convergents) {
        ordered_json cj;
        cj["n"] = c.n;
        cj["p"] = c.p.str();
        cj["q"] = c.q.str();
        cj["q_mod4"] = c.q_mod4;
        cj["side"] = c.side == Side::left ? "left" : c.side == Side::right ? "right" : "exact";
        if (c.tau_defined) {
            cj["tau"] = num(cfg, c.tau);
            cj["tau_lo"] = num(cfg, c.tau_lo);
            cj["tau_hi"] = num(cfg, c.tau_hi);
            cj["tau_certified"] = c.tau_certified;
        } else {
            cj["tau"] = nullptr;
        }
        convs.push_back(cj);
    }
    j["convergents"] = convs;
    emit(cfg, j);
    return kExitOk;
}

int run_alpha(const RunConfig& cfg, const std::string& xspec, const std::string& hmin,
              const std::string& hmax, bool detrend, bool envelope, bool predict_only, int depth,
              int per_decade, bool csv) {
    CertifiedReal x = parse_xspec(xspec);
    PredictedAlpha pred = predicted_alpha(x, depth);
    ordered_json j;
    j["command"] = "alpha";
    j["x"] = xspec;
    j["predicted"] = num(cfg, pred.alpha);
    const char* src = pred.source == AlphaSource::rational_half            ? "rational_half"
                      : pred.source == AlphaSource::rational_differentiable ? "rational_differentiable"
                      : pred.source == AlphaSource::quadratic_exact         ? "quadratic_exact"
                                                                            : "tau_window";
    j["predicted_source"] = src;
    if (pred.source == AlphaSource::rational_differentiable) {
        j["predicted_raw_exponent"] = num(cfg, pred.raw_exponent);
        j["predicted_detrended_exponent"] = num(cfg, pred.detrended_exponent);
    }
    if (pred.source == AlphaSource::tau_window || pred.source == AlphaSource::quadratic_exact)
        j["tau"] = num(cfg, pred.tau);

    if (!predict_only) {
        HoelderFit fit = estimate_alpha(x, real(hmin), real(hmax), per_decade, detrend, envelope);
        j["fitted_raw"] = num(cfg, fit.exponent_raw);
        j["fitted_detrended"] = num(cfg, fit.exponent_detrended);
        j["residual"] = num(cfg, fit.fit_residual);
        j["envelope"] = fit.envelope;
        j["sane"] = fit.sane;
        if (csv) {
            // plot-ready grid on stdout instead of the JSON document
            std::vector<const HoelderSample*> rows;
            for (const auto& s : fit.samples) rows.push_back(&s);
            std::sort(rows.begin(), rows.end(), [](const HoelderSample* a, const HoelderSample* b) {
                real fa = fabs(a->h), fb = fabs(b->h);
                if (fa != fb) return fa > fb;
                return a->h > b->h;
            });
            std::cout << "h,abs_increment,re,im,est_error\n";
            for (const auto* s : rows) {
                std::cout << num(cfg, s->h) << "," << num(cfg, abs(s->increment)) << ","
                          << num(cfg, s->increment.re) << "," << num(cfg, s->increment.im) << ","
                          << num(cfg, s->est_error) << "\n";
            }
            return kExitOk;
        }
        ordered_json samples = ordered_json::array();
        for (const auto& s : fit.samples) {
            ordered_json sj;
            sj["h"] = num(cfg, s.h);
            sj["abs_increment"] = num(cfg, abs(s.increment));
            sj["re"] = num(cfg, s.increment.re);
            sj["im"] = num(cfg, s.increment.im);
            sj["est_error"] = num(cfg, s.est_error);
            samples.push_back(sj);
        }
        j["samples"] = samples;
    }
    emit(cfg, j);
    return kExitOk;
}

int run_verify(const RunConfig& cfg, const std::string& suite) {
    std::vector<std::pair<std::string, std::vector<CheckResult>>> suites;
    auto add = [&](const std::string& name) {
        if (name == "gauss") suites.emplace_back(name, verify_gauss(cfg.seed));
        else if (name == "theta") suites.emplace_back(name, verify_theta(cfg.seed));
        else if (name == "expansion") suites.emplace_back(name, verify_expansion(cfg.seed));
        else if (name == "table1") suites.emplace_back(name, verify_table1(cfg.seed));
        else if (name == "contfrac") suites.emplace_back(name, verify_contfrac(cfg.seed));
        else if (name == "witness") suites.emplace_back(name, verify_witness(cfg.seed));
        else throw CLI::ValidationError("unknown suite: " + name);
    };
    if (suite == "all") {
        for (const char* s : {"gauss", "theta", "expansion", "table1", "contfrac", "witness"}) add(s);
    } else {
        add(suite);
    }
    bool all_pass = true;
    for (const auto& [name, results] : suites) {
        for (const auto& r : results) {
            std::cout << (r.pass ? "PASS" : "FAIL") << " [" << name << "] " << r.name << " -- "
                      << r.detail << "\n";
            if (!r.pass) all_pass = false;
        }
    }
    set_working_digits(cfg.digits);
    return all_pass ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"riemannphi: Gauss sums, the Jacobi theta function near the real axis, and the\n"
                 "local behavior of Riemann's function phi(x) = sum e(n^2 x)/(2 pi i n^2)"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");

    RunConfig cfg;
    if (const char* env = std::getenv("RIEMANN_PRECISION")) cfg.digits = std::strtoul(env, nullptr, 10);
    app.add_option("--digits", cfg.digits, "working decimal digits (default 40, min 17)");
    app.add_option("--tol", cfg.tol, "default tolerance (default 1e-10)");
    app.add_option("--output", cfg.output, "json, csv or text; csv applies to grid-producing commands")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", cfg.seed, "seed for randomized property grids");

    // gauss-sum
    long long gq = 0, gp = 0, gm = 0;
    bool gbrute = false;
    auto* cmd_gauss = app.add_subcommand("gauss-sum", "closed-form quadratic Gauss sum S(q,p) or S(q,p,m)");
    cmd_gauss->set_help_flag("--help");
    cmd_gauss->fallthrough();
    cmd_gauss->add_option("q", gq, "modulus")->required();
    cmd_gauss->add_option("p", gp, "numerator, coprime to q")->required();
    auto* mopt = cmd_gauss->add_option("--m", gm, "linear twist");
    cmd_gauss->add_flag("--brute", gbrute, "cross-check against direct summation");

    // theta
    std::string tx, ty, tmethod = "auto";
    long long tp = 0, tq = 0;
    auto* cmd_theta = app.add_subcommand("theta", "theta(x + i y) for y > 0");
    cmd_theta->set_help_flag("--help");
    cmd_theta->fallthrough();
    cmd_theta->add_option("--x", tx)->required();
    cmd_theta->add_option("--y", ty)->required();
    cmd_theta->add_option("--method", tmethod)->check(CLI::IsMember({"auto", "direct", "near"}));
    cmd_theta->add_option("--p", tp, "anchor numerator for --method near");
    cmd_theta->add_option("--q", tq, "anchor denominator for --method near");

    // phi
    std::string px, ph, py;
    bool pseries = false;
    auto* cmd_phi = app.add_subcommand("phi", "phi value, or the increment phi(x+h) - phi(x)");
    cmd_phi->set_help_flag("--help");
    cmd_phi->fallthrough();
    cmd_phi->add_option("--x", px)->required();
    cmd_phi->add_option("--h", ph, "increment step (uses the contour)");
    cmd_phi->add_option("--y", py, "imaginary part for value evaluation");
    cmd_phi->add_flag("--series", pseries, "use the series oracle for the increment");

    // expand
    std::string epq, eh;
    int eK = -1;
    auto* cmd_expand = app.add_subcommand("expand", "local expansion data at p/q");
    cmd_expand->set_help_flag("--help");
    cmd_expand->fallthrough();
    cmd_expand->add_option("pq", epq, "rational point p/q")->required();
    cmd_expand->add_option("--h", eh, "also evaluate the remainder at this h");
    cmd_expand->add_option("--K", eK, "asymptotic terms up to order K");

    // cf
    std::string cx;
    int cterms = 20;
    auto* cmd_cf = app.add_subcommand("cf", "certified continued fraction of an x-spec");
    cmd_cf->set_help_flag("--help");
    cmd_cf->fallthrough();
    cmd_cf->add_option("xspec", cx, "rat:p/q | dec:<digits> | quad:a0,...,(period)")->required();
    cmd_cf->add_option("--terms", cterms);

    // alpha
    std::string ax, ahmin = "1e-5", ahmax = "1e-2";
    bool adetrend = false, aenvelope = false, apredict = false, acsv = false;
    int adepth = 25, aper = 4;
    auto* cmd_alpha = app.add_subcommand("alpha", "pointwise Hoelder exponent: prediction and fit");
    cmd_alpha->set_help_flag("--help");
    cmd_alpha->fallthrough();
    cmd_alpha->add_option("xspec", ax)->required();
    cmd_alpha->add_option("--h-min", ahmin);
    cmd_alpha->add_option("--h-max", ahmax);
    cmd_alpha->add_option("--depth", adepth, "continued-fraction depth for the prediction");
    cmd_alpha->add_option("--samples-per-decade", aper);
    cmd_alpha->add_flag("--detrend", adetrend, "remove the -h/2 trend before fitting");
    cmd_alpha->add_flag("--envelope", aenvelope, "fit the running-maximum envelope");
    cmd_alpha->add_flag("--predict-only", apredict);
    cmd_alpha->add_flag("--csv", acsv, "emit the (h, increment) grid as CSV");

    // verify
    std::string vsuite;
    auto* cmd_verify = app.add_subcommand("verify", "run a property suite");
    cmd_verify->set_help_flag("--help");
    cmd_verify->fallthrough();
    cmd_verify->add_option("suite", vsuite, "gauss|theta|expansion|table1|contfrac|witness|all")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (cfg.digits < 17) {
        std::cerr << "error: --digits must be at least 17\n";
        return kExitUsage;
    }
    if (cfg.tol < std::pow(10.0, -static_cast<double>(cfg.digits) + 5)) {
        std::cerr << "error: --tol below what " << cfg.digits << " digits can support\n";
        return kExitUsage;
    }
    set_working_digits(cfg.digits);

    try {
        if (*cmd_gauss) return run_gauss_sum(cfg, gq, gp, gm, mopt->count() > 0, gbrute);
        if (*cmd_theta) return run_theta(cfg, tx, ty, tmethod, tp, tq);
        if (*cmd_phi) return run_phi(cfg, px, ph, py, pseries);
        if (*cmd_expand) return run_expand(cfg, epq, eh, eK);
        if (*cmd_cf) return run_cf(cfg, cx, cterms);
        if (*cmd_alpha)
            return run_alpha(cfg, ax, ahmin, ahmax, adetrend, aenvelope, apredict, adepth, aper,
                             acsv || cfg.output == "csv");
        if (*cmd_verify) return run_verify(cfg, vsuite);
    } catch (const precision_error& e) {
        std::cerr << "error: " << e.what() << " (need about " << e.needed_digits << " digits)\n";
        return kExitPrecision;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
