"""Seeded randomized verification suites.

Each suite derives one RNG per trial from ``(suite, seed, index)``, so the
ledger is identical no matter how trials are spread over workers.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .cohomology import (
    check_c_stability,
    compute_summary,
    cube_weight_alternating_sum,
    euler_characteristic,
)
from .errors import LatCohError, UnsupportedGermError
from .germs import (
    WeightedHomogeneousGerm,
    analytic_invariants,
    brieskorn_spectrum,
    brieskorn_spectrum_oracle,
    spectrum_unit_interval,
)
from .hilbert import (
    HilbertPair,
    PairBounds,
    check_axioms,
    check_cdp,
    check_path_bounds,
    generate_pair,
    verify_theorem_3_7,
    weight_from_pair,
)
from .lattice import LatticePath, Rectangle, WeightModel, shift
from .parallel import pmap
from .paths import path_eu_weights, path_module
from .roots import build_root, root_module, validate_root

SUITES = ("euler", "paths", "theorem37", "cdp", "stability", "germ-oracle", "coherence")


@dataclass
class Ledger:
    suite: str
    params: dict[str, Any]
    trials: int = 0
    passed: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == self.trials and not self.failures

    def add(self, record: dict[str, Any]) -> None:
        self.trials += 1
        if record.get("ok"):
            self.passed += 1
        else:
            self.failures.append(record)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "params": self.params,
            "trials": self.trials,
            "passed": self.passed,
            "status": "pass" if self.ok else "fail",
            "failures": self.failures,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def line(self) -> str:
        return f"{self.suite}: {self.passed}/{self.trials} {'PASS' if self.ok else 'FAIL'}"


def trial_rng(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{index}")


def random_model(rng: random.Random, rank: int, cmax: int, lo: int = -2, hi: int = 4) -> WeightModel:
    c = tuple(rng.randint(1, cmax) for _ in range(rank))
    rect = Rectangle(c)
    return WeightModel(rect, tuple(rng.randint(lo, hi) for _ in range(rect.npoints)))


def _model_dict(model: WeightModel) -> dict[str, Any]:
    return {"c": list(model.rect.upper), "values": list(model.values)}


# ---------------------------------------------------------------- euler

def euler_models(seed: int, trials: int, rank: int | None, cmax: int | None) -> list[WeightModel]:
    models = []
    for i in range(trials):
        rng = trial_rng("euler", seed, i)
        r = rank if rank is not None else (2 if i % 2 == 0 else 3)
        cm = cmax if cmax is not None else (4 if r <= 2 else 3)
        models.append(random_model(rng, r, cm))
    return models


def _euler_trial(model: WeightModel) -> dict[str, Any]:
    eu = euler_characteristic(compute_summary(model))
    alt = cube_weight_alternating_sum(model)
    rec = {"ok": eu == alt, "eu": eu, "alternating_sum": alt}
    if not rec["ok"]:
        rec["model"] = _model_dict(model)
    return rec


def euler_suite(seed=0, trials=200, rank=None, cmax=None, workers=1) -> Ledger:
    ledger = Ledger("euler", {"seed": seed, "trials": trials, "rank": rank, "cmax": cmax})
    for rec in pmap(_euler_trial, euler_models(seed, trials, rank, cmax), workers):
        ledger.add(rec)
    return ledger


# ---------------------------------------------------------------- coherence

def _coherence_trial(model: WeightModel) -> dict[str, Any]:
    summary = compute_summary(model)
    root = build_root(model)
    valid = validate_root(root)
    if not valid.ok:
        return {"ok": False, "axiom": valid.axiom, "witness": valid.witness, "model": _model_dict(model)}
    ranks = root_module(root).ranks
    for lv in summary.levels:
        if ranks.get(lv.n) != lv.components:
            return {
                "ok": False,
                "level": lv.n,
                "root_rank": ranks.get(lv.n),
                "components": lv.components,
                "model": _model_dict(model),
            }
    return {"ok": True}


FIXTURE_EXPONENTS = ((2, 3, 5), (2, 3, 7), (2, 3, 11), (2, 3, 13))


def coherence_suite(seed=0, trials=200, rank=None, cmax=None, workers=1) -> Ledger:
    """Root ranks versus degree-0 ranks on the euler-suite models and the
    Brieskorn fixture tables."""
    ledger = Ledger("coherence", {"seed": seed, "trials": trials, "rank": rank, "cmax": cmax})
    models = euler_models(seed, trials, rank, cmax)
    models += [analytic_invariants(WeightedHomogeneousGerm.brieskorn(a)).model for a in FIXTURE_EXPONENTS]
    for rec in pmap(_coherence_trial, models, workers):
        ledger.add(rec)
    return ledger


# ---------------------------------------------------------------- paths

def random_path(rng: random.Random, rect: Rectangle, max_len: int) -> LatticePath:
    pts = [rect.lower]
    seen = {rect.lower}
    for _ in range(max_len):
        cur = pts[-1]
        moves = []
        for v in range(rect.rank):
            for step in (1, -1):
                nxt = shift(cur, (v,), step)
                if rect.contains(nxt) and nxt not in seen:
                    moves.append(nxt)
        if not moves:
            break
        nxt = rng.choice(moves)
        pts.append(nxt)
        seen.add(nxt)
    return LatticePath(tuple(pts))


def _path_trial(index_seed: tuple[int, int]) -> dict[str, Any]:
    seed, i = index_seed
    rng = trial_rng("paths", seed, i)
    model = random_model(rng, rng.randint(1, 3), 4)
    path = random_path(rng, model.rect, rng.randint(0, 16))
    formula = path_eu_weights(path, model)
    try:
        module = path_module(path, model)
    except LatCohError as exc:
        return {"ok": False, "error": str(exc), "path": [list(p) for p in path.points]}
    ok = formula == module.eu
    rec = {"ok": ok}
    if not ok:
        rec.update(
            formula=formula,
            module_eu=module.eu,
            path=[list(p) for p in path.points],
            model=_model_dict(model),
        )
    return rec


def paths_suite(seed=0, trials=500, workers=1) -> Ledger:
    ledger = Ledger("paths", {"seed": seed, "trials": trials})
    for rec in pmap(_path_trial, [(seed, i) for i in range(trials)], workers):
        ledger.add(rec)
    return ledger


# ---------------------------------------------------------------- hilbert pairs

def random_pair(seed: int, i: int, suite: str, cmax: int = 4, rank_max: int = 3) -> HilbertPair:
    rng = trial_rng(suite, seed, i)
    s = rng.randint(1, rank_max)
    m = rng.randint(1, 3)
    pair, _ = generate_pair(rng, m, s, PairBounds(cmax=cmax))
    return pair


def cdp_pairs(seed: int, count: int, cmax: int = 4, max_attempts: int | None = None) -> tuple[list[HilbertPair], int]:
    """First ``count`` generated pairs passing CDP, and the attempts used."""
    max_attempts = max_attempts or 100 * count
    found = []
    attempt = 0
    while len(found) < count and attempt < max_attempts:
        pair = random_pair(seed, attempt, "theorem37", cmax)
        if not check_cdp(pair):
            found.append(pair)
        attempt += 1
    return found, attempt


def _theorem_trial(pair: HilbertPair) -> dict[str, Any]:
    axioms = check_axioms(pair)
    report = verify_theorem_3_7(pair)
    rec = {"ok": report.status == "pass" and all(a.ok for a in axioms.values())}
    if not rec["ok"]:
        rec.update(pair=pair.to_dict(), report=report.to_dict(),
                   axioms={k: v.to_dict() for k, v in axioms.items()})
    return rec


def theorem37_suite(seed=0, trials=100, cmax=4, workers=1) -> Ledger:
    ledger = Ledger("theorem37", {"seed": seed, "trials": trials, "cmax": cmax})
    pairs, attempts = cdp_pairs(seed, trials, cmax)
    ledger.notes["attempts"] = attempts
    if len(pairs) < trials:
        ledger.failures.append({"ok": False, "error": f"only {len(pairs)} CDP pairs in {attempts} attempts"})
    for rec in pmap(_theorem_trial, pairs, workers):
        ledger.add(rec)
    return ledger


def staircase_pair(c: int = 3) -> HilbertPair:
    """``h(l) = l`` with ``h° = h^sym``: CDP fails at every step."""
    return HilbertPair.from_functions((c,), lambda l: l[0])


def _bounds_trial(pair: HilbertPair) -> dict[str, Any]:
    report = check_path_bounds(pair)
    rec = {"ok": report.ok, "cdp": not check_cdp(pair), "strict_paths": report.strict_paths}
    if not report.ok:
        rec.update(pair=pair.to_dict(), report=report.to_dict())
    return rec


def cdp_suite(seed=0, trials=100, cmax=4, workers=1) -> Ledger:
    """Path eu bounds on arbitrary generated pairs (CDP or not)."""
    ledger = Ledger("cdp", {"seed": seed, "trials": trials, "cmax": cmax})
    pairs = [random_pair(seed, i, "cdp", cmax) for i in range(trials)]
    records = pmap(_bounds_trial, pairs, workers)
    for rec in records:
        ledger.add(rec)
    ledger.notes["cdp_failing_pairs"] = sum(1 for r in records if not r["cdp"])
    stair = staircase_pair()
    report = check_path_bounds(stair)
    model_eu = euler_characteristic(compute_summary(weight_from_pair(stair)))
    ledger.notes["staircase"] = {
        "c": list(stair.c),
        "upper": report.upper,
        "eu": model_eu,
        "strict_paths": report.strict_paths,
    }
    strict = report.ok and report.strict_paths == report.path_count and model_eu < report.upper
    ledger.add({"ok": strict, "staircase": ledger.notes["staircase"]})
    return ledger


# ---------------------------------------------------------------- stability

def random_extension(rng: random.Random, model: WeightModel, v: int) -> WeightModel:
    """Grow along ``v`` with ``w0(l) >= w0(l - E_v)`` on the new face."""
    rect = model.rect.grown(v)
    old = model.rect.upper[v]

    def w(p):
        if p[v] <= old:
            return model[p]
        return model[shift(p, (v,), -1)] + rng.randint(0, 2)

    return WeightModel.from_function(rect, w)


def _stability_trial(index_seed: tuple[int, int]) -> dict[str, Any]:
    seed, i = index_seed
    rng = trial_rng("stability", seed, i)
    rank = rng.randint(1, 3)
    model = random_model(rng, rank, 3 if rank == 3 else 4)
    v = rng.randrange(rank)
    extended = random_extension(rng, model, v)
    report = check_c_stability(model, extended, v)
    rec = {"ok": report.ok}
    if not report.ok:
        rec.update(direction=v, discrepancy=report.discrepancy,
                   model=_model_dict(model), extended=_model_dict(extended))
    return rec


def stability_suite(seed=0, trials=50, workers=1) -> Ledger:
    ledger = Ledger("stability", {"seed": seed, "trials": trials})
    for rec in pmap(_stability_trial, [(seed, i) for i in range(trials)], workers):
        ledger.add(rec)
    return ledger


# ---------------------------------------------------------------- germs

def brieskorn_triples(amax: int = 12) -> list[tuple[int, int, int]]:
    return [
        (a, b, c)
        for a in range(2, amax + 1)
        for b in range(a, amax + 1)
        for c in range(b, amax + 1)
    ]


def _germ_oracle_trial(exps: tuple[int, ...]) -> dict[str, Any]:
    germ = WeightedHomogeneousGerm.brieskorn(exps)
    has_one = any(a == 1 for a in brieskorn_spectrum(exps))
    try:
        got = spectrum_unit_interval(germ)
    except UnsupportedGermError:
        return {"ok": has_one, "exponents": list(exps), "refused": True}
    if has_one:
        return {"ok": False, "exponents": list(exps), "error": "spectral number 1 not refused"}
    want = brieskorn_spectrum_oracle(exps)
    rec = {"ok": got == want, "exponents": list(exps), "refused": False}
    if got != want:
        rec.update(enumerated=got.as_strings(), oracle=want.as_strings())
    return rec


def germ_oracle_suite(amax=12, workers=1) -> Ledger:
    ledger = Ledger("germ-oracle", {"amax": amax})
    records = pmap(_germ_oracle_trial, brieskorn_triples(amax), workers)
    for rec in records:
        ledger.add(rec)
    ledger.notes["compared"] = sum(1 for r in records if r.get("refused") is False)
    ledger.notes["refused"] = sum(1 for r in records if r.get("refused"))
    return ledger


RUNNERS: dict[str, Callable[..., Ledger]] = {
    "euler": euler_suite,
    "paths": paths_suite,
    "theorem37": theorem37_suite,
    "cdp": cdp_suite,
    "stability": stability_suite,
    "germ-oracle": germ_oracle_suite,
    "coherence": coherence_suite,
}
