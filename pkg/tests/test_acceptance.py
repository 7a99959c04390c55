"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also collected in the terminal summary.
"""

import io
import json
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from latcoh import verify
from latcoh.cli import main
from latcoh.cohomology import compute_summary
from latcoh.germs import (
    WeightedHomogeneousGerm,
    analytic_invariants,
    spectrum_product_formula,
    spectrum_unit_interval,
)
from latcoh.errors import UnsupportedGermError
from latcoh.roots import build_root, root_module, validate_root


def record(number, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_criterion_1_euler_identity():
    start = time.perf_counter()
    ledger = verify.euler_suite(seed=0, trials=200)
    elapsed = time.perf_counter() - start
    ok = ledger.ok and ledger.trials == 200 and elapsed < 120
    record(1, "alternating cube-weight sum equals eu", ok,
           f"{ledger.passed}/{ledger.trials} exact, {elapsed:.1f}s")
    assert ok, ledger.failures[:3]


def test_criterion_2_path_formulas():
    ledger = verify.paths_suite(seed=0, trials=500)
    ok = ledger.ok and ledger.trials == 500
    record(2, "path eu formula equals -m + reduced rank, H^>=1 = 0", ok,
           f"{ledger.passed}/{ledger.trials}")
    assert ok, ledger.failures[:3]


def test_criterion_3_theorem_suite():
    ledger = verify.theorem37_suite(seed=0, trials=100, cmax=4)
    ok = ledger.ok and ledger.trials == 100
    record(3, "eu coincidence and series identity on CDP pairs", ok,
           f"{ledger.passed}/{ledger.trials}, {ledger.notes['attempts']} pairs drawn")
    assert ok, ledger.failures[:3]


def test_criterion_4_lemma_bounds():
    ledger = verify.cdp_suite(seed=0, trials=100, cmax=4)
    stair = ledger.notes["staircase"]
    ok = (
        ledger.ok
        and ledger.trials == 101
        and ledger.notes["cdp_failing_pairs"] > 0
        and stair["eu"] == 0 < stair["upper"] == stair["c"][0]
    )
    record(4, "0 <= path eu <= h(0)-h(c) without CDP; staircase strict", ok,
           f"{ledger.passed}/{ledger.trials}, {ledger.notes['cdp_failing_pairs']} CDP-failing, "
           f"staircase eu={stair['eu']} < {stair['upper']}")
    assert ok, ledger.failures[:3]


FIXTURES = {
    (2, 3, 7): {"spectrum": [Fraction(41, 42)], "p_g": 1, "leaves": 2, "module": "T+_0 + Z(deg 0)"},
    (2, 3, 11): {"spectrum": [Fraction(61, 66)], "p_g": 1, "leaves": 2, "module": "T+_0 + Z(deg 0)"},
    (2, 3, 5): {"spectrum": [], "p_g": 0, "leaves": 1, "module": "T+_0"},
    (2, 3, 13): {"spectrum": [Fraction(71, 78), Fraction(77, 78)], "p_g": 2, "leaves": 3,
                 "module": "T+_0 + Z^2(deg 0)"},
}


def test_criterion_5_brieskorn_fixtures():
    results = {}
    for exps, want in FIXTURES.items():
        start = time.perf_counter()
        inv = analytic_invariants(WeightedHomogeneousGerm.brieskorn(exps))
        elapsed = time.perf_counter() - start
        leaves = inv.root.leaves()
        results[exps] = (
            list(inv.spectrum.values) == want["spectrum"]
            and inv.p_g == inv.eu == want["p_g"]
            and len(leaves) == want["leaves"]
            and all(v[0] == 0 for v in leaves)
            and root_module(inv.root).describe() == want["module"]
            and elapsed < 1.0,
            elapsed,
            inv,
        )
    r237, r2311 = results[(2, 3, 7)][2].root, results[(2, 3, 11)][2].root
    merge = r237.parent(r237.leaves()[0])
    same_root = r237.shape() == r2311.shape() and merge[0] == 1 and r237.parent(r237.leaves()[1]) == merge
    bamboo = all(len(results[(2, 3, 5)][2].root.fibre(n)) == 1 for n in range(0, results[(2, 3, 5)][2].root.top + 1))
    ok = all(r[0] for r in results.values()) and same_root and bamboo
    times = ", ".join(f"{'.'.join(map(str, e))}: {r[1] * 1000:.0f}ms" for e, r in results.items())
    record(5, "Brieskorn fixtures (spectra, roots, eu)", ok, times)
    assert ok


def test_criterion_6_spectrum_oracle():
    start = time.perf_counter()
    ledger = verify.germ_oracle_suite(amax=12)
    # second, independent route: the general product formula by polynomial division
    mismatches = []
    for exps in verify.brieskorn_triples(12):
        germ = WeightedHomogeneousGerm.brieskorn(exps)
        full = spectrum_product_formula(germ)
        try:
            got = list(spectrum_unit_interval(germ).values)
        except UnsupportedGermError:
            if Fraction(1) not in full:
                mismatches.append(exps)
            continue
        if Fraction(1) in full or got != [a for a in full if a < 1]:
            mismatches.append(exps)
    elapsed = time.perf_counter() - start
    ok = ledger.ok and not mismatches and elapsed < 30
    record(6, "lattice enumeration equals product-formula oracle", ok,
           f"{ledger.notes['compared']} compared, {ledger.notes['refused']} refused, "
           f"{len(mismatches)} product-formula mismatches, {elapsed:.1f}s")
    assert ok, (ledger.failures[:3], mismatches[:3])


def test_criterion_7_root_module_coherence():
    models = verify.euler_models(0, 200, None, None)
    models += [analytic_invariants(WeightedHomogeneousGerm.brieskorn(e)).model for e in FIXTURES]
    bad = []
    for i, model in enumerate(models):
        root = build_root(model)
        summary = compute_summary(model)
        if not validate_root(root).ok:
            bad.append(i)
            continue
        ranks = root_module(root).ranks
        if any(ranks[lv.n] != lv.betti[0] for lv in summary.levels):
            bad.append(i)
    ok = not bad
    record(7, "root degree-0 ranks equal cohomology ranks", ok,
           f"{len(models) - len(bad)}/{len(models)} models")
    assert ok, bad[:5]


def test_criterion_8_c_stability():
    ledger = verify.stability_suite(seed=0, trials=50)
    ok = ledger.ok and ledger.trials == 50
    record(8, "tower unchanged after retraction-compatible extension", ok,
           f"{ledger.passed}/{ledger.trials}")
    assert ok, ledger.failures[:3]


DETERMINISM_RUNS = [
    ["verify", "euler", "--seed", "3", "--trials", "60"],
    ["verify", "paths", "--seed", "3", "--trials", "150"],
    ["verify", "theorem37", "--seed", "3", "--trials", "30"],
    ["verify", "cdp", "--seed", "3", "--trials", "30"],
    ["verify", "stability", "--seed", "3", "--trials", "20"],
    ["verify", "germ-oracle", "--amax", "9"],
    ["verify", "coherence", "--seed", "3", "--trials", "40"],
]


def _run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue().encode()


def test_criterion_9_determinism(monkeypatch):
    monkeypatch.delenv("LATCOH_THREADS", raising=False)
    differing = []
    for argv in DETERMINISM_RUNS:
        reference = _run(argv + ["--parallel", "1"])
        assert reference[0] == 0, argv
        for workers in ("2", "4"):
            if _run(argv + ["--parallel", workers]) != reference:
                differing.append((argv[1], workers))
        json.loads(reference[1])
    ok = not differing
    record(9, "byte-identical reports across --parallel 1/2/4", ok,
           f"{len(DETERMINISM_RUNS)} suites, differing: {differing or 'none'}")
    assert ok
