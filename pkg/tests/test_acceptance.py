"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line shown in pytest's terminal summary.
"""
import math
import time

import numpy as np
import pytest

from entropic_lg.entropy import (
    alpha_log, conditional_entropy, joint_entropy, tsallis_entropy,
)
from entropic_lg.inefficiency import (
    distort_pair, distort_single, entropy_pair_closed, entropy_single_closed,
    inefficient_from_tables, lg_inefficient, ratio,
)
from entropic_lg.lg import (
    argmax_theta, c_tilde_curve, default_alpha_grid, domain_extension, lg_conditional_form,
    lg_report, theta_grid, violation_domain,
)
from entropic_lg.macrorealism import fuzz, joint_from_model, pair_marginals, random_model
from entropic_lg.quantum import ProtocolSpec, random_unitary, skip_joint, skip_joint_literal
from entropic_lg.systems import SystemFamily, make_protocol

ETAS = (0.95, 0.96, 0.97, 0.98, 0.99)


def extension_case(report, label, system, beta, target, tol):
    t0 = time.perf_counter()
    ext = domain_extension(system, beta, default_alpha_grid(), 2001, 1e-12, threads=1)
    elapsed = time.perf_counter() - t0
    ok = abs(ext.percent - target) <= tol and elapsed < 30.0
    report(label, ok, f"extension {ext.percent:.2f} % (target {target} +- {tol}), {elapsed:.1f} s")
    assert elapsed < 30.0
    assert ext.percent == pytest.approx(target, abs=tol)


def test_c01_extension_qubit_beta1(report):
    extension_case(report, "C1 qubit beta=1 extension", "qubit", 1.0, 29.1, 3.0)


def test_c02_extension_qubit_beta5(report):
    extension_case(report, "C2 qubit beta=5 extension", "qubit", 5.0, 34.3, 3.0)


def test_c03_extension_qutrit_beta5(report):
    extension_case(report, "C3 qutrit beta=5 extension", "qutrit", 5.0, 46.0, 5.0)


def test_c04_large_alpha_maximum(report):
    _, c = argmax_theta("qubit", 1.0, 50.0, 2001)
    ok = abs(c - 0.36e-7) <= 0.3 * 0.36e-7
    report("C4 alpha=50 maximum", ok, f"max C~ = {c:.4g} (target 0.36e-7 +- 30 %)")
    assert ok


def test_c05_temperature_dependence(report):
    th = theta_grid(2001)
    shannon = np.abs(c_tilde_curve("qubit", 1.0, 1.0, th) - c_tilde_curve("qubit", 5.0, 1.0, th)).max()
    shannon *= alpha_log(2, 1.0)  # compare unscaled C_1
    tsallis = np.abs(c_tilde_curve("qubit", 1.0, 2.0, th) - c_tilde_curve("qubit", 5.0, 2.0, th)).max()
    tsallis *= alpha_log(2, 2.0)
    ok = shannon <= 1e-12 and tsallis > 1e-3
    report("C5 temperature (in)dependence", ok,
           f"alpha=1 max diff {shannon:.2e} (<= 1e-12), alpha=2 max diff {tsallis:.3g} (> 1e-3)")
    assert shannon <= 1e-12
    assert tsallis > 1e-3


def test_c06_per_alpha_extension_vanishes(report):
    d1 = violation_domain("qubit", 1.0, 1.0).measure
    d26 = violation_domain("qubit", 1.0, 2.6).measure
    excess = (d26 - d1) / math.pi
    ok = excess < 0.005
    report("C6 alpha=2.6 vs alpha=1 domain", ok, f"excess {excess:.4f} pi (target < 0.005 pi)")
    assert ok


def test_c07_maximum_drift(report):
    spots = [argmax_theta("qubit", 1.0, a, 2001)[0] for a in (1.0, 1.5, 2.0, 2.5)]
    ok = all(b > a for a, b in zip(spots, spots[1:]))
    report("C7 argmax drift", ok, "theta*/pi = " + ", ".join(f"{s / math.pi:.4f}" for s in spots))
    assert ok


def test_c08_ratio_behavior(report):
    spec = make_protocol(SystemFamily("qubit", 0.15 * math.pi, 5.0))
    alphas = default_alpha_grid()
    details, ok = [], True
    for eta in ETAS:
        r = np.array([ratio(spec, a, eta) for a in alphas])
        a_min = alphas[int(np.argmin(r))]
        good = ratio(spec, 2.5, eta) < ratio(spec, 1.05, eta) and 2.0 < a_min < 3.0
        ok &= good
        details.append(f"eta={eta}: argmin alpha {a_min:.2f}")
    report("C8 ratio behavior", ok, "; ".join(details))
    assert ok


def test_c09_classical_bound_fuzz(report):
    t0 = time.perf_counter()
    s = fuzz(10_000, seed=0)
    elapsed = time.perf_counter() - t0
    ok = s.violations == 0 and elapsed < 60.0
    report("C9 classical fuzz", ok,
           f"{s.models} models, max C = {s.max_C_alpha:.3g}, violations {s.violations}, {elapsed:.1f} s")
    assert ok


def test_c10_oracle_equivalence(report):
    rng = np.random.default_rng(10)
    worst = {"eq8": 0.0, "eq11": 0.0, "eq31": 0.0, "quantum": 0.0, "skip": 0.0, "cond": 0.0}
    etas = np.linspace(0, 1, 11)
    for _ in range(1000):
        da, db = rng.integers(1, 5, size=2)
        J = rng.standard_exponential((da, db))
        J[rng.random((da, db)) < 0.2] = 0.0
        J = J / J.sum() if J.sum() else np.eye(da, db)[:, :] / min(da, db)
        px, py = J.sum(1), J.sum(0)
        for a in (0.5, 1.0, 1.5, 2.0, 3.0):
            hj, hx, hy = joint_entropy(J, a), tsallis_entropy(px, a), tsallis_entropy(py, a)
            for e in etas:
                worst["eq8"] = max(worst["eq8"], abs(
                    entropy_single_closed(hx, e, a) - tsallis_entropy(distort_single(px, e), a)))
                worst["eq11"] = max(worst["eq11"], abs(
                    entropy_pair_closed(hj, hx, hy, e, a) - joint_entropy(distort_pair(J, e), a)))
    for i in range(1000):
        d, L = int(rng.integers(2, 4)), int(rng.choice([1, 2, 4, 8]))
        j12, j23, j13 = pair_marginals(joint_from_model(random_model(rng.integers(1 << 62), d, L)))
        a, e = float(rng.choice([1.0, 1.5, 2.0, 3.0])), float(rng.choice(etas))
        r = inefficient_from_tables(j12, j23, j13, a, e)
        worst["eq31"] = max(worst["eq31"], abs(r.C_eta_direct - r.C_eta))
    for _ in range(1000):
        d = int(rng.integers(2, 4))
        lv = np.sort(rng.random(d))
        u, v = random_unitary(d, rng), random_unitary(d, rng)
        p = rng.dirichlet(np.ones(d))
        worst["skip"] = max(worst["skip"], np.abs(skip_joint(p, u, v) - skip_joint_literal(p, u, v)).max())
        spec = ProtocolSpec(lv, lv, lv, float(rng.uniform(0, 5)), u, v)
        a = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        worst["cond"] = max(worst["cond"], abs(lg_conditional_form(spec, a) - lg_report(spec, a).C_alpha))
        r = lg_inefficient(spec, a, float(rng.choice(etas)))
        worst["quantum"] = max(worst["quantum"], abs(r.C_eta_direct - r.C_eta - r.marginal_term))
    ok = all(v <= 1e-12 for v in worst.values())
    report("C10 oracle equivalence", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + " (all <= 1e-12)")
    for key, value in worst.items():
        assert value <= 1e-12, key


def test_c11_entropy_properties(report):
    rng = np.random.default_rng(11)
    worst = {"chain": 0.0, "monotone": -np.inf, "pseudo": 0.0, "range": -np.inf, "continuity": 0.0}
    for i in range(1000):
        da, db = (int(x) for x in rng.integers(1, 5, size=2))
        J = rng.dirichlet(np.full(da * db, 0.7)).reshape(da, db)
        for a in (0.5, 1.0, 1.5, 2.0, 3.0):
            hj = joint_entropy(J, a)
            hx, hy = tsallis_entropy(J.sum(1), a), tsallis_entropy(J.sum(0), a)
            chain = max(abs(hj - hx - conditional_entropy(J, a, "rows")),
                        abs(hj - hy - conditional_entropy(J, a, "columns")))
            worst["chain"] = max(worst["chain"], chain)
            worst["range"] = max(worst["range"], -hj, hj - alpha_log(da * db, a))
            if a >= 1:
                worst["range"] = max(worst["range"], conditional_entropy(J, a) - alpha_log(da, a))
            p, q = J.sum(1), J.sum(0)
            prod = np.outer(p, q)
            worst["pseudo"] = max(worst["pseudo"], abs(
                joint_entropy(prod, a) - (hx + hy + (1 - a) * hx * hy)))
        # conditioning on more, alpha >= 1, on a joint from a sampled model
        triple = joint_from_model(random_model(rng.integers(1 << 62), int(rng.integers(2, 4)),
                                               int(rng.choice([1, 2, 4, 8]))))
        d = triple.shape[0]
        for a in (1.0, 1.5, 2.0, 3.0, 5.0):
            gap = (conditional_entropy(triple.reshape(d, d * d), a)
                   - conditional_entropy(triple.sum(axis=2), a))
            worst["monotone"] = max(worst["monotone"], gap)
        p = J.ravel()
        h1 = tsallis_entropy(p, 1.0)
        worst["continuity"] = max(worst["continuity"],
                                  abs(tsallis_entropy(p, 1 + 1e-6) - h1), abs(tsallis_entropy(p, 1 - 1e-6) - h1))
    ok = (worst["chain"] <= 1e-12 and worst["monotone"] <= 1e-12 and worst["pseudo"] <= 1e-12
          and worst["range"] <= 1e-12 and worst["continuity"] <= 1e-5)
    report("C11 entropy properties", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
    assert worst["chain"] <= 1e-12
    assert worst["monotone"] <= 1e-12
    assert worst["pseudo"] <= 1e-12
    assert worst["range"] <= 1e-12
    assert worst["continuity"] <= 1e-5


def test_c12_qubit_periodicity(report):
    th = theta_grid(2001)
    gaps = {a: np.abs(c_tilde_curve("qubit", b, a, th) - c_tilde_curve("qubit", b, a, th + math.pi)).max()
            for a in (1.0, 2.0) for b in (1.0,)}
    worst = max(gaps.values())
    ok = worst <= 1e-12
    report("C12 qubit pi-periodicity", ok, f"max |C~(t) - C~(t+pi)| = {worst:.1e}")
    assert ok
