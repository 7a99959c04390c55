"""``latcoh`` command line interface.

Input documents (UTF-8 JSON, one job per document)::

    {"kind": "weight_table", "rank": s, "c": [...], "values": [...]}
    {"kind": "hilbert_pair", "rank": s, "c": [...], "h": [...], "h_circ": [...] | "sym"}
    {"kind": "weighted_homogeneous", "weights": [...], "degree": d}

Tables are flat, row-major (last coordinate fastest) over ``[0, c]``.
Table jobs may also carry ``"path": [[...], ...]`` and
``"region": {"lower": [...], "upper": [...]}``.  Any job may carry
``"options": {"budget": int, "parallelism": int, "format": "json"|"dot"}``;
command line flags take precedence.

Output of ``cohomology``::

    {"min_level", "max_level", "base_point", "tower": {"degree"},
     "levels": [{"n", "degree" (= 2n), "betti", "torsion", "components"}],
     "u_ranks": [{"from": n+1, "to": n, "ranks": [...]}], "eu"}

``torsion[q]`` lists the invariant factors of the torsion of ``H^q``.
Graded roots use the ``latcoh/graded-root`` JSON schema (see
:mod:`latcoh.roots`) or DOT.

Exit codes: 0 success, 2 verification failure, 64 usage, 65 data,
70 internal.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from . import verify
from .cohomology import compute_summary
from .errors import (
    DimensionError,
    DomainError,
    LatCohError,
    PathError,
    PreconditionError,
    UnsupportedGermError,
    UsageError,
)
from .germs import WeightedHomogeneousGerm, analytic_invariants, reduced_weight, spectrum_unit_interval
from .hilbert import (
    HilbertPair,
    check_axioms,
    check_cdp,
    check_path_bounds,
    symmetrize,
    verify_theorem_3_7,
    weight_from_pair,
)
from .lattice import Box, LatticePath, LatticeTable, Rectangle, WeightModel
from .paths import DEFAULT_BUDGET, min_increasing_eu, path_eu_weights, path_module
from .roots import build_root, export_root

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70

KINDS = ("weight_table", "hilbert_pair", "weighted_homogeneous")
OPTION_KEYS = ("budget", "format", "parallelism")


@dataclass
class JobConfig:
    kind: str
    payload: Any
    path: LatticePath | None = None
    region: Box | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def model(self) -> WeightModel:
        if self.kind == "weight_table":
            return self.payload
        if self.kind == "hilbert_pair":
            return weight_from_pair(self.payload)
        return reduced_weight(self.payload)


# ---------------------------------------------------------------- parsing

def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise UsageError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list):
        raise UsageError(f"{where}: expected a list of integers")
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(value)]


def _require(doc: dict, key: str):
    if key not in doc:
        raise UsageError(f"$.{key}: required field missing")
    return doc[key]


def _check_keys(doc: dict, allowed: set[str]) -> None:
    extra = sorted(set(doc) - allowed)
    if extra:
        raise UsageError(f"$.{extra[0]}: unexpected field")


def _rectangle(doc: dict) -> Rectangle:
    rank = _int(_require(doc, "rank"), "$.rank")
    c = _int_list(_require(doc, "c"), "$.c")
    if rank < 1:
        raise UsageError("$.rank: must be >= 1")
    if len(c) != rank:
        raise DimensionError(f"$.c: has {len(c)} entries but rank is {rank}")
    for i, x in enumerate(c):
        if x < 0:
            raise UsageError(f"$.c[{i}]: must be >= 0")
    return Rectangle(tuple(c))


def _table(doc: dict, key: str, rect: Rectangle) -> LatticeTable:
    values = _int_list(_require(doc, key), f"$.{key}")
    if len(values) != rect.npoints:
        raise DimensionError(
            f"$.{key}: has {len(values)} values, rectangle {list(rect.upper)} needs {rect.npoints}"
        )
    return LatticeTable(rect, tuple(values))


def parse_input(text: str) -> JobConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise UsageError("$: expected a JSON object")
    kind = _require(doc, "kind")
    if kind not in KINDS:
        raise UsageError(f"$.kind: unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise UsageError("$.options: expected an object")
    for key, value in options.items():
        if key not in OPTION_KEYS:
            raise UsageError(f"$.options.{key}: unknown option (expected one of {', '.join(OPTION_KEYS)})")
        if key == "format":
            if value not in ("json", "dot"):
                raise UsageError('$.options.format: expected "json" or "dot"')
        else:
            _int(value, f"$.options.{key}")
    if kind == "weighted_homogeneous":
        _check_keys(doc, {"kind", "weights", "degree", "options"})
        weights = _int_list(_require(doc, "weights"), "$.weights")
        degree = _int(_require(doc, "degree"), "$.degree")
        try:
            germ = WeightedHomogeneousGerm(tuple(weights), degree)
        except DomainError as exc:
            raise UsageError(f"$.weights: {exc}") from None
        return JobConfig(kind, germ, options=options)

    common = {"kind", "rank", "c", "path", "region", "options"}
    rect = _rectangle(doc)
    if kind == "weight_table":
        _check_keys(doc, common | {"values"})
        payload = WeightModel(rect, _table(doc, "values", rect).values)
    else:
        _check_keys(doc, common | {"h", "h_circ"})
        h = _table(doc, "h", rect)
        hc = doc.get("h_circ", "sym")
        if hc == "sym":
            hcirc = symmetrize(h)
        elif isinstance(hc, list):
            hcirc = _table(doc, "h_circ", rect)
        else:
            raise UsageError('$.h_circ: expected a list of integers or "sym"')
        try:
            payload = HilbertPair(rect, h, hcirc)
        except DomainError as exc:
            raise UsageError(f"$.c: {exc}") from None

    job = JobConfig(kind, payload, options=options)
    if "path" in doc:
        pts = doc["path"]
        if not isinstance(pts, list) or not pts:
            raise UsageError("$.path: expected a non-empty list of points")
        points = []
        for i, p in enumerate(pts):
            coords = _int_list(p, f"$.path[{i}]")
            if len(coords) != rect.rank:
                raise DimensionError(f"$.path[{i}]: expected {rect.rank} coordinates")
            points.append(tuple(coords))
        try:
            job.path = LatticePath(tuple(points))
        except PathError as exc:
            raise UsageError(f"$.path: {exc}") from None
    if "region" in doc:
        reg = doc["region"]
        if not isinstance(reg, dict):
            raise UsageError("$.region: expected an object with lower/upper")
        lower = _int_list(_require(reg, "lower"), "$.region.lower")
        upper = _int_list(_require(reg, "upper"), "$.region.upper")
        try:
            job.region = Box(tuple(lower), tuple(upper))
        except DomainError as exc:
            raise UsageError(f"$.region: {exc}") from None
    return job


def parse_path_arg(text: str) -> LatticePath:
    """``"0,0;1,0;1,1"`` -> LatticePath."""
    try:
        pts = tuple(tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";") if chunk)
    except ValueError:
        raise UsageError(f"--path: cannot parse {text!r}") from None
    try:
        return LatticePath(pts)
    except PathError as exc:
        raise UsageError(f"--path: {exc}") from None


# ---------------------------------------------------------------- commands

def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load(args) -> JobConfig:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return parse_input(text)


def cmd_cohomology(args, out) -> int:
    job = _load(args)
    workers = args.parallel if args.parallel is not None else job.options.get("parallelism")
    summary = compute_summary(job.model(), job.region, workers=workers)
    report = summary.to_dict()
    if job.kind == "weighted_homogeneous":
        report["p_g"] = spectrum_unit_interval(job.payload).p_g
    out.write(_dump(report))
    return EXIT_OK


def cmd_root(args, out) -> int:
    job = _load(args)
    fmt = args.format or job.options.get("format", "json")
    text = export_root(build_root(job.model(), job.region), fmt)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_path(args, out) -> int:
    job = _load(args)
    model = job.model()
    path = parse_path_arg(args.path) if args.path else job.path
    report: dict[str, Any] = {}
    if path is None:
        budget = args.budget if args.budget is not None else job.options.get("budget", DEFAULT_BUDGET)
        best = min_increasing_eu(model, budget=budget)
        report["minimum"] = best.to_dict()
        path = best.witness
    module = path_module(path, model)
    report.update(
        path=[list(p) for p in path.points],
        increasing=path.increasing,
        module=module.to_dict(),
        eu_module=module.eu,
        eu_weights=path_eu_weights(path, model),
    )
    out.write(_dump(report))
    return EXIT_OK


def cmd_spectrum(args, out) -> int:
    job = _load(args)
    if job.kind != "weighted_homogeneous":
        raise UsageError("spectrum needs a weighted_homogeneous job")
    spec = spectrum_unit_interval(job.payload)
    out.write(_dump({"spectrum": spec.as_strings(), "p_g": spec.p_g}))
    return EXIT_OK


def cmd_germ(args, out) -> int:
    job = _load(args)
    if job.kind != "weighted_homogeneous":
        raise UsageError("germ needs a weighted_homogeneous job")
    inv = analytic_invariants(job.payload)
    out.write(_dump(inv.to_dict()))
    return EXIT_OK


def _pair_ledger(job: JobConfig, suite: str) -> verify.Ledger:
    if job.kind != "hilbert_pair":
        raise UsageError(f"verify {suite} -i needs a hilbert_pair job")
    pair = job.payload
    ledger = verify.Ledger(suite, {"input": pair.to_dict()})
    ledger.notes["axioms"] = {k: v.to_dict() for k, v in check_axioms(pair).items()}
    ledger.notes["cdp_violations"] = [{"l": list(l), "v": v} for l, v in check_cdp(pair)]
    if suite == "theorem37":
        report = verify_theorem_3_7(pair, budget=sum(pair.c))
        ledger.notes["report"] = report.to_dict()
        ledger.add({"ok": report.ok, "status": report.status, **({} if report.ok else report.to_dict())})
    else:
        report = check_path_bounds(pair, budget=sum(pair.c))
        ledger.add({"ok": report.ok, **({} if report.ok else report.to_dict())})
    return ledger


def cmd_verify(args, out) -> int:
    suite = args.suite
    workers = args.parallel
    if args.input is not None:
        if suite not in ("theorem37", "cdp"):
            raise UsageError(f"verify {suite} does not take an input file")
        ledger = _pair_ledger(_load(args), suite)
    elif suite == "euler":
        ledger = verify.euler_suite(args.seed, args.trials or 200, args.rank, args.cmax, workers)
    elif suite == "coherence":
        ledger = verify.coherence_suite(args.seed, args.trials or 200, args.rank, args.cmax, workers)
    elif suite == "paths":
        ledger = verify.paths_suite(args.seed, args.trials or 500, workers)
    elif suite == "theorem37":
        ledger = verify.theorem37_suite(args.seed, args.trials or 100, args.cmax or 4, workers)
    elif suite == "cdp":
        ledger = verify.cdp_suite(args.seed, args.trials or 100, args.cmax or 4, workers)
    elif suite == "stability":
        ledger = verify.stability_suite(args.seed, args.trials or 50, workers)
    else:
        ledger = verify.germ_oracle_suite(args.amax, workers)
    out.write(ledger.to_json())
    return EXIT_OK if ledger.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latcoh", description="Lattice cohomology toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def job_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-i", "--input", help="job JSON file (default: stdin)")
        p.add_argument("--parallel", type=int, default=None,
                       help="worker processes (default: $LATCOH_THREADS or 1)")
        return p

    job_command("cohomology", "graded module summary of the level tower")
    p = job_command("root", "graded root of the level tower")
    p.add_argument("-f", "--format", choices=("json", "dot"), default=None)
    p.add_argument("-o", "--output", help="write the root here instead of stdout")
    p = job_command("path", "path lattice cohomology and both eu formulas")
    p.add_argument("--path", help='points as "x,y;x,y;..." (default: job path or minimal increasing path)')
    p.add_argument("--budget", type=int, default=None,
                   help=f"exhaustive path budget in unit steps (default: job option or {DEFAULT_BUDGET})")
    job_command("spectrum", "spectral numbers in (0,1) and p_g")
    job_command("germ", "full analytic pipeline of a weighted homogeneous germ")

    p = sub.add_parser("verify", help="randomized verification suites")
    p.add_argument("suite", choices=verify.SUITES)
    p.add_argument("-i", "--input", help="verify a single hilbert_pair job (theorem37, cdp)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--cmax", type=int, default=None)
    p.add_argument("--amax", type=int, default=12, help="largest Brieskorn exponent (germ-oracle)")
    p.add_argument("--parallel", type=int, default=None)
    return parser


COMMANDS = {
    "cohomology": cmd_cohomology,
    "root": cmd_root,
    "path": cmd_path,
    "spectrum": cmd_spectrum,
    "germ": cmd_germ,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        code = EXIT_DATA if isinstance(exc, DimensionError) else EXIT_USAGE
        print(f"latcoh: {exc}", file=sys.stderr)
        return code
    except (DomainError, PreconditionError, UnsupportedGermError) as exc:
        print(f"latcoh: {exc}", file=sys.stderr)
        return EXIT_DATA
    except LatCohError as exc:
        print(f"latcoh: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"latcoh: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
