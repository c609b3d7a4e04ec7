"""Smoke tests for the python bindings."""

import math
import sys

import riemannphi as rp


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    rp.set_precision(40)
    assert rp.get_precision() == 40

    # number theory
    assert rp.jacobi_symbol(2, 15) == 1
    assert rp.jacobi_symbol(2, 3) == -1
    assert rp.epsilon_factor(3) == 1j
    s4 = rp.gauss_sum(4, 1)
    assert close(s4["value"], 2 + 2j, 1e-12)
    assert s4["abs_squared"] == 8
    brute, est = rp.gauss_sum_brute(5, 2)
    assert close(brute, -math.sqrt(5), 1e-10)
    g, _ = rp.gauss_sum_general(3, 1, 1)
    assert close(g, 1.5 - math.sqrt(3) / 2 * 1j, 1e-12)

    # theta: direct vs near-rational anchor
    t = rp.theta(0.5, 0.5)
    assert t["method"] == "direct"
    assert close(t["value"].imag, 0, 1e-9) or abs(t["value"]) > 0
    tn = rp.theta(1 / 3, 1e-8)
    assert tn["method"] == "near_rational"
    assert tn["anchor"] == (1, 3)
    td = rp.theta_direct(0.0, 0.5)
    assert close(td["value"].real, 1.0864348112133080, 1e-12)

    # phi and f
    v, err = rp.phi(0.0)
    assert close(v.imag, -math.pi / 12, 1e-6)
    fv, ferr = rp.riemann_f(0.5)
    assert close(fv, math.pi**2 / 8, 1e-5)
    inc = rp.phi_increment("0.5", 1e-4, 1e-9)
    assert close(inc["value"].real, -5e-5, 5e-6)

    # continued fractions
    cf = rp.continued_fraction("quad:0,1,(1)", 8)
    qs = [int(c["q"]) for c in cf["convergents"]]
    assert qs[:6] == [1, 1, 2, 3, 5, 8]
    te = rp.tau_estimate("quad:0,(2)", 25)
    assert 2.0 <= te["tau_hat"] <= 2.1
    assert te["exact"] == 2.0

    # local expansion
    e = rp.expansion(1, 4)
    assert close(e["c_minus"].real, -0.5, 1e-12)
    assert e["table_row"] == "q0_p1"
    assert rp.is_differentiable_f(1, 3)
    assert not rp.is_differentiable_f(1, 2)

    # Hoelder predictions
    assert close(rp.alpha_from_tau(2), 0.75, 1e-15)
    assert close(rp.predicted_alpha("quad:0,1,(1)")["alpha"], 0.75, 1e-12)
    assert close(rp.predicted_alpha("rat:1/3")["alpha"], 0.5, 1e-15)

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
