"""Acceptance gate: the ten headline guarantees, one PASS/FAIL line each.

Each test runs the corresponding verification path at its published
sample count and tolerance, prints a single summary line on the live
terminal stream, and asserts the outcome.  All tolerances here are
pinned; loosening any of them is a contract change, not a tweak.
"""

import json
import time

import numpy as np

from conftest import ACCEPTANCE_LINES

from greenteich.cli import main as cli_main
from greenteich.discsearch import SearchConfig, minimize_disc_functional
from greenteich.domains import unit_ball
from greenteich.torus import teich_distance
from greenteich.verify import (
    sample_in_ball,
    suite_corollary5,
    suite_eq2,
    suite_hyperconvex,
    suite_lemma1,
    suite_lemma2,
    suite_poletskii_disc,
    suite_psh,
    suite_theorem2,
    suite_theorem3,
)


def report(number: int, label: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {number:2d} [{status}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_acceptance_01_identity_on_torus_moduli():
    t0 = time.perf_counter()
    res = suite_eq2(100, seed=0)
    elapsed = time.perf_counter() - t0
    ok = (res["pass"]
          and res["max_halfplane_discrepancy"] <= 1e-12
          and res["max_transform_discrepancy"] <= 1e-13
          and elapsed < 1.0)
    report(1, "g = log k = log tanh d on 100 torus pairs", ok,
           f"halfplane {res['max_halfplane_discrepancy']:.2e} <= 1e-12, "
           f"transform {res['max_transform_discrepancy']:.2e} <= 1e-13, "
           f"{elapsed:.2f}s")


def test_acceptance_02_disc_functional_on_the_ball():
    t0 = time.perf_counter()
    res = suite_lemma1(100, seed=0,
                       cfg=SearchConfig(max_degree=4, n_starts=16, seed=0))
    elapsed = time.perf_counter() - t0
    ok = res["pass"] and res["n_within_tolerance"] >= 95 and elapsed < 120.0
    report(2, "ball estimate within 1e-4 for >=95 of 100 pairs", ok,
           f"{res['n_within_tolerance']}/100 within 1e-4, worst gap "
           f"{res['worst_case']:.2e}, undershoot "
           f"{res['worst_undershoot']:.1e}, {elapsed:.1f}s")


def test_acceptance_03_functional_exactness_on_the_disc():
    t0 = time.perf_counter()
    res = suite_poletskii_disc(50, seed=0)
    elapsed = time.perf_counter() - t0
    ok = res["pass"] and res["worst_case"] <= 1e-6 and elapsed < 30.0
    report(3, "disc estimate equals log rho within 1e-6 on 50 pairs", ok,
           f"worst {res['worst_case']:.2e} <= 1e-6, witness boundary defect "
           f"{res['worst_witness_boundary_defect']:.2e}, {elapsed:.1f}s")


def test_acceptance_04_metric_coincidence():
    t0 = time.perf_counter()
    disc = suite_theorem2("disc", 50, seed=0)
    ball = suite_theorem2("ball2", 20, seed=0)
    elapsed = time.perf_counter() - t0
    worst = max(disc["max_discrepancy"], ball["max_discrepancy"])
    ok = (disc["pass"] and ball["pass"] and worst <= 5e-3
          and disc["worst_closed_form_discrepancy"] <= 5e-3
          and elapsed < 120.0)
    report(4, "Azukawa = Kobayashi-Royden (50 disc + 20 ball tangents)", ok,
           f"max gap {worst:.2e} <= 5e-3, disc closed form "
           f"{disc['worst_closed_form_discrepancy']:.2e}, {elapsed:.1f}s")


def test_acceptance_05_fiber_infimum_identity():
    t0 = time.perf_counter()
    res = suite_lemma2(50, seed=0)
    elapsed = time.perf_counter() - t0
    ok = res["pass"] and res["worst_case"] <= 1e-12 and elapsed < 1.0
    report(5, "g equals the Beltrami-ball value on 50 torus pairs", ok,
           f"worst {res['worst_case']:.2e} <= 1e-12, {elapsed:.2f}s")


def test_acceptance_06_pairing_on_the_torus():
    t0 = time.perf_counter()
    const = suite_corollary5("torus-constant", seed=0)["checks"][0]
    alt = suite_corollary5("torus-alternating", seed=0)["checks"][0]
    elapsed = time.perf_counter() - t0
    ok = (const["pass"] and const["worst_deviation"] <= 1e-12
          and alt["pass"] and elapsed < 10.0)
    report(6, "torus pairing: constant exact, alternating bounded", ok,
           f"constant deviation {const['worst_deviation']:.2e} <= 1e-12 "
           f"(20 values), alternating {alt['hk_constant_basis']:.2e} "
           f"<= 0.5*{alt['sup_norm']:.2g}, {elapsed:.1f}s")


def test_acceptance_07_extremality_on_the_disc():
    t0 = time.perf_counter()
    res = suite_corollary5("disc-teichmueller", seed=0)
    elapsed = time.perf_counter() - t0
    check = res["checks"][0]
    ok = (check["pass"] and check["verdict"] == "extremal"
          and abs(check["hk_value"] - 0.4) <= 1e-6 and elapsed < 30.0)
    report(7, "Teichmueller field 0.4 certified extremal (degree-6 basis)",
           ok, f"hk {check['hk_value']:.8f} vs sup 0.4, gap "
           f"{abs(check['hk_value'] - 0.4):.2e} <= 1e-6, {elapsed:.1f}s")


def test_acceptance_08_certificate_ladder():
    t0 = time.perf_counter()
    res = suite_theorem3(20, seed=0)
    elapsed = time.perf_counter() - t0
    ok = res["pass"] and res["worst_case"] <= 1e-10 and elapsed < 1.0
    report(8, "certificate ratio ladder exact on 20 torus draws", ok,
           f"worst ratio deviation {res['worst_case']:.2e} <= 1e-10, "
           f"norm identity to 1e-12, {elapsed:.2f}s")


def test_acceptance_09_symmetry_submean_hyperconvexity():
    t0 = time.perf_counter()
    # torus symmetry at 1e-14
    rng = np.random.default_rng(0)
    worst_sym = 0.0
    for _ in range(50):
        x = complex(rng.uniform(-2, 2), rng.uniform(0.2, 5))
        y = complex(rng.uniform(-2, 2), rng.uniform(0.2, 5))
        worst_sym = max(worst_sym,
                        abs(teich_distance(x, y).d - teich_distance(y, x).d))
    # estimator symmetry within twice the achieved optimization gap
    B = unit_ball(2)
    cfg = SearchConfig(seed=0, n_starts=6, max_degree=2)
    sym_ok = True
    for _ in range(3):
        x = sample_in_ball(rng, 2, 0.7)
        y = sample_in_ball(rng, 2, 0.7)
        if np.linalg.norm(x - y) < 0.1:
            continue
        fwd = minimize_disc_functional(B, x, y, cfg).estimate
        bwd = minimize_disc_functional(B, y, x, cfg).estimate
        gap = max(fwd, bwd) - B.green(x, y)
        sym_ok = sym_ok and abs(fwd - bwd) <= 2 * max(gap, 1e-9)
    psh = suite_psh(200, seed=0)
    hyp = suite_hyperconvex(seed=0)
    elapsed = time.perf_counter() - t0
    ok = (worst_sym <= 1e-14 and sym_ok and psh["pass"] and hyp["pass"]
          and elapsed < 60.0)
    report(9, "symmetry + sub-mean values + hyperconvexity + controls", ok,
           f"torus symmetry {worst_sym:.1e} <= 1e-14, estimator symmetric, "
           f"psh worst {psh['worst_case']:.2e} <= 1e-8, probes monotone, "
           f"{elapsed:.1f}s")


def test_acceptance_10_byte_identical_reruns(tmp_path, capsys):
    outputs = []
    for _ in range(2):
        code = cli_main(["verify", "lemma2", "--n", "20", "--seed", "42"])
        captured = capsys.readouterr()
        outputs.append(captured.out)
        assert code == 0
    identical = outputs[0] == outputs[1]
    payload = json.loads(outputs[0])
    ok = identical and payload["pass"]
    report(10, "verify rerun with the same seed is byte-identical", ok,
           f"{len(outputs[0])} bytes, identical={identical}")
