#include "riemannphi/contfrac.hpp"
#include "riemannphi/hoelder.hpp"
#include "riemannphi/input.hpp"
#include "riemannphi/local.hpp"
#include "riemannphi/numtheory.hpp"
#include "riemannphi/phi.hpp"
#include "riemannphi/theta.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

namespace py = pybind11;
using namespace rphi;

namespace {

std::complex<double> to_cd(const Complex& z) {
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

double to_d(const real& x) { return x.convert_to<double>(); }

py::dict theta_dict(const ThetaResult& t) {
    py::dict d;
    d["value"] = to_cd(t.value);
    d["est_error"] = to_d(t.est_error);
    d["method"] = t.method == ThetaMethod::direct ? "direct" : "near_rational";
    d["anchor"] = py::make_tuple(t.anchor_p, t.anchor_q);
    d["terms_used"] = t.terms_used;
    return d;
}

py::dict increment_dict(const PhiIncrement& inc) {
    py::dict d;
    d["value"] = to_cd(inc.value);
    d["est_error"] = to_d(inc.est_error);
    d["method"] = inc.method == IncrementMethod::contour ? "contour" : "series_oracle";
    return d;
}

} // namespace

PYBIND11_MODULE(_riemannphi, m) {
    m.doc() = "Quadratic Gauss sums, the Jacobi theta function near the real axis, and the "
              "pointwise behavior of Riemann's function phi";

    m.def("set_precision", &set_working_digits, py::arg("digits10"),
          "set the working precision in decimal digits");
    m.def("get_precision", &working_digits);

    m.def("jacobi_symbol", [](long long p, long long q) { return jacobi_symbol(p, q); },
          py::arg("p"), py::arg("q"));

    m.def("epsilon_factor", [](long long n) {
        GaussianInt e = epsilon_factor(n);
        return std::complex<double>(e.re, e.im);
    }, py::arg("n"));

    m.def("gauss_sum", [](long long q, long long p) {
        GaussSumValue s = gauss_sum_closed(q, p);
        py::dict d;
        d["value"] = to_cd(s.to_complex());
        d["exact"] = s.exact_string();
        d["a"] = s.a;
        d["b"] = s.b;
        d["abs_squared"] = s.abs_squared().convert_to<long long>();
        return d;
    }, py::arg("q"), py::arg("p"), "closed-form S(q,p) = (a + b i) sqrt(q)");

    m.def("gauss_sum_brute", [](long long q, long long p) {
        auto r = gauss_sum_brute(q, p);
        return py::make_tuple(to_cd(r.value), to_d(r.est_error));
    }, py::arg("q"), py::arg("p"));

    m.def("gauss_sum_general", [](long long q, long long p, long long m) {
        GeneralGaussSum s = gauss_sum_general(q, p, m);
        return py::make_tuple(to_cd(s.value), to_d(s.est_error));
    }, py::arg("q"), py::arg("p"), py::arg("m"));

    m.def("theta", [](double x, double y, double tol) {
        return theta_dict(theta_auto(UpperHalfPoint{real(x), real(y)}, real(tol)));
    }, py::arg("x"), py::arg("y"), py::arg("tol") = 1e-10);

    m.def("theta_direct", [](double x, double y, double tol) {
        return theta_dict(theta_direct(UpperHalfPoint{real(x), real(y)}, real(tol)));
    }, py::arg("x"), py::arg("y"), py::arg("tol") = 1e-10);

    m.def("theta_near_rational", [](long long p, long long q, std::complex<double> zeta, double tol,
                                    long long max_terms) {
        return theta_dict(theta_near_rational(
            p, q, Complex(real(zeta.real()), real(zeta.imag())), real(tol), max_terms));
    }, py::arg("p"), py::arg("q"), py::arg("zeta"), py::arg("tol") = 1e-10,
          py::arg("max_terms") = 1000000);

    m.def("phi", [](double x, double y, double tol) {
        PhiValue v = phi_series(Complex(real(x), real(y)), real(tol));
        return py::make_tuple(to_cd(v.value), to_d(v.est_error));
    }, py::arg("x"), py::arg("y") = 0.0, py::arg("tol") = 1e-7);

    m.def("phi_increment", [](const std::string& xspec_or_dec, double h, double tol, bool series) {
        real x;
        if (xspec_or_dec.find(':') != std::string::npos)
            x = parse_xspec(xspec_or_dec).midpoint();
        else
            x = real(xspec_or_dec);
        PhiIncrement inc = series ? phi_increment_series(x, real(h), real(tol))
                                  : phi_increment_contour(x, real(h), real(tol));
        return increment_dict(inc);
    }, py::arg("x"), py::arg("h"), py::arg("tol") = 1e-9, py::arg("series") = false);

    m.def("riemann_f", [](double x, double tol) {
        RealWithError v = riemann_f(real(x), real(tol));
        return py::make_tuple(to_d(v.value), to_d(v.est_error));
    }, py::arg("x"), py::arg("tol") = 1e-7);

    m.def("continued_fraction", [](const std::string& xspec, int terms) {
        CfExpansion e = cf_expand(parse_xspec(xspec), terms);
        py::list convs;
        for (const auto& c : e.convergents) {
            py::dict d;
            d["n"] = c.n;
            d["p"] = c.p.str();
            d["q"] = c.q.str();
            d["q_mod4"] = c.q_mod4;
            d["side"] = c.side == Side::left ? "left" : c.side == Side::right ? "right" : "exact";
            if (c.tau_defined) {
                d["tau"] = to_d(c.tau);
                d["tau_certified"] = c.tau_certified;
            } else {
                d["tau"] = py::none();
            }
            convs.append(d);
        }
        py::dict out;
        out["convergents"] = convs;
        out["truncated"] = e.truncated;
        out["certified_terms"] = e.certified_terms;
        return out;
    }, py::arg("xspec"), py::arg("terms") = 20);

    m.def("tau_estimate", [](const std::string& xspec, int terms) {
        TauEstimate t = tau_estimate(parse_xspec(xspec), terms);
        py::dict d;
        d["tau_hat"] = to_d(t.tau_hat);
        d["exact"] = t.has_exact ? py::cast(to_d(t.exact_value)) : py::none();
        d["filtered_indices"] = t.filtered_indices;
        d["window_indices"] = t.window_indices;
        return d;
    }, py::arg("xspec"), py::arg("terms") = 25);

    m.def("alpha_from_tau", [](double tau) { return to_d(alpha_from_tau(real(tau))); },
          py::arg("tau"));

    m.def("expansion", [](long long p, long long q) {
        RationalExpansion e = expansion_constants(p, q);
        py::dict d;
        d["c_minus"] = to_cd(e.c_minus);
        d["c_plus"] = to_cd(e.c_plus);
        d["gauss_sum"] = e.S.exact_string();
        d["differentiable_phi"] = e.differentiable_phi;
        d["re_coeff_left"] = to_d(e.re_coeff_left);
        d["re_coeff_right"] = to_d(e.re_coeff_right);
        const char* row = e.row == TableRow::q1      ? "q1"
                          : e.row == TableRow::q3    ? "q3"
                          : e.row == TableRow::q2    ? "q2"
                          : e.row == TableRow::q0_p1 ? "q0_p1"
                                                     : "q0_p3";
        d["table_row"] = row;
        return d;
    }, py::arg("p"), py::arg("q"));

    m.def("remainder", [](long long p, long long q, double h, double tol) {
        ComplexWithError r = remainder_term(p, q, real(h), real(tol));
        return py::make_tuple(to_cd(r.value), to_d(r.est_error));
    }, py::arg("p"), py::arg("q"), py::arg("h"), py::arg("tol") = 1e-9);

    m.def("twisted_phi", [](long long q, long long p, int k, double x, double tol) {
        ComplexWithError r = twisted_phi_eval(TwistedPhi{q, p, k}, real(x), real(tol));
        return py::make_tuple(to_cd(r.value), to_d(r.est_error));
    }, py::arg("q"), py::arg("p"), py::arg("k"), py::arg("x"), py::arg("tol") = 1e-7);

    m.def("is_differentiable_f", [](long long p, long long q) { return is_differentiable_f(p, q); },
          py::arg("p"), py::arg("q"));

    m.def("estimate_alpha", [](const std::string& xspec, double h_min, double h_max,
                               int samples_per_decade, bool detrend, bool envelope) {
        HoelderFit fit = estimate_alpha(parse_xspec(xspec), real(h_min), real(h_max),
                                        samples_per_decade, detrend, envelope);
        py::dict d;
        d["exponent_raw"] = to_d(fit.exponent_raw);
        d["exponent_detrended"] = to_d(fit.exponent_detrended);
        d["fit_residual"] = to_d(fit.fit_residual);
        d["sane"] = fit.sane;
        py::list samples;
        for (const auto& s : fit.samples)
            samples.append(py::make_tuple(to_d(s.h), to_cd(s.increment), to_d(s.est_error)));
        d["samples"] = samples;
        return d;
    }, py::arg("xspec"), py::arg("h_min") = 1e-5, py::arg("h_max") = 1e-2,
          py::arg("samples_per_decade") = 4, py::arg("detrend") = false, py::arg("envelope") = true);

    m.def("predicted_alpha", [](const std::string& xspec, int depth) {
        PredictedAlpha a = predicted_alpha(parse_xspec(xspec), depth);
        py::dict d;
        d["alpha"] = to_d(a.alpha);
        const char* src = a.source == AlphaSource::rational_half             ? "rational_half"
                          : a.source == AlphaSource::rational_differentiable ? "rational_differentiable"
                          : a.source == AlphaSource::quadratic_exact         ? "quadratic_exact"
                                                                             : "tau_window";
        d["source"] = src;
        return d;
    }, py::arg("xspec"), py::arg("depth") = 25);

    m.def("witness_check", [](const std::string& xspec, const std::vector<int>& indices,
                              double lambda) {
        WitnessReport w = witness_check(parse_xspec(xspec), indices, real(lambda));
        py::list entries;
        for (const auto& e : w.entries) {
            py::dict d;
            d["l"] = e.l;
            d["r"] = e.r.p.str() + "/" + e.r.q.str();
            d["h"] = to_d(e.h_l);
            d["measured"] = to_d(e.measured);
            d["ratio"] = to_d(e.ratio);
            entries.append(d);
        }
        py::dict d;
        d["entries"] = entries;
        d["min_ratio"] = to_d(w.min_ratio);
        d["max_ratio"] = to_d(w.max_ratio);
        return d;
    }, py::arg("xspec"), py::arg("indices"), py::arg("lambda_") = 0.1);
}
