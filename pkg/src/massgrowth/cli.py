"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 verification failure,
4 nilpotent input.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .catalog import KINDS, ClosedForm, closed_form_displacement, closed_form_mass_growth, consistency_with_bounds
from .dynamics import AutoEquivalence, exact_report
from .laurent import LaurentMatrix
from .perron import DEFAULT_GRID, NilpotentError, check_pl_bounds, entropy_curve
from .semisimple import StabilityCondition
from .suites import SUITES, run_sweep

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VERIFY = 3
EXIT_NILPOTENT = 4

INSTANCE_VERSION = 1


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceFile:
    matrix: LaurentMatrix | None = None
    autoequivalence: AutoEquivalence | None = None
    stabilities: tuple[StabilityCondition, ...] = ()
    grid: tuple[float, ...] | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.matrix is None and self.autoequivalence is None:
            raise ValidationError("instance needs a matrix or an auto-equivalence")
        sizes = set()
        if self.matrix is not None:
            sizes.add(self.matrix.size)
        if self.autoequivalence is not None:
            sizes.add(self.autoequivalence.size)
        sizes.update(s.size for s in self.stabilities)
        if len(sizes) > 1:
            raise ValidationError(f"inconsistent sizes in instance: {sorted(sizes)}")

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceFile":
        if not isinstance(data, dict):
            raise ValidationError("instance must be a JSON object")
        version = data.get("version", INSTANCE_VERSION)
        if version != INSTANCE_VERSION:
            raise ValidationError(f"unsupported instance version {version}")
        try:
            matrix = LaurentMatrix.from_lists(data["matrix"]) if "matrix" in data else None
            auto = AutoEquivalence.from_dict(data["autoequivalence"]) if "autoequivalence" in data else None
            stabs = []
            if "stability" in data:
                stabs.append(StabilityCondition.from_dict(data["stability"]))
            stabs.extend(StabilityCondition.from_dict(s) for s in data.get("stabilities", []))
            grid = tuple(float(t) for t in data["grid"]) if "grid" in data else None
            seed = int(data["seed"]) if "seed" in data else None
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed instance: {exc}") from exc
        return cls(matrix, auto, tuple(stabs), grid, seed)

    def to_dict(self) -> dict:
        out: dict = {"version": INSTANCE_VERSION}
        if self.matrix is not None:
            out["matrix"] = self.matrix.to_lists()
        if self.autoequivalence is not None:
            out["autoequivalence"] = self.autoequivalence.to_dict()
        if self.stabilities:
            out["stabilities"] = [s.to_dict() for s in self.stabilities]
        if self.grid is not None:
            out["grid"] = list(self.grid)
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def load_instance(path: str | Path) -> InstanceFile:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc
    return InstanceFile.from_dict(data)


def parse_grid(spec: str) -> tuple[float, ...]:
    """``lo:hi:n`` -> n evenly spaced points from lo to hi inclusive."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must look like lo:hi:n, got {spec!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ValidationError(f"bad grid {spec!r}: {exc}") from exc
    if n < 1 or (n > 1 and hi <= lo):
        raise ValidationError(f"grid needs n >= 1 and lo < hi, got {spec!r}")
    return tuple(float(t) for t in np.linspace(lo, hi, n))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _resolve_grid(args, inst: InstanceFile | None) -> tuple[float, ...]:
    if args.grid is not None:
        return parse_grid(args.grid)
    if inst is not None and inst.grid is not None:
        return inst.grid
    return tuple(float(t) for t in DEFAULT_GRID)


def cmd_entropy(args) -> int:
    inst = load_instance(args.instance)
    matrix = inst.matrix
    if matrix is None:
        matrix = inst.autoequivalence.matrix()
    grid = _resolve_grid(args, inst)
    curve = entropy_curve(matrix, grid)
    _emit(curve.to_csv(), args.out)
    report = check_pl_bounds(matrix, grid)
    if not report.passed:
        print(f"bound violation {report.max_violation:.3g} at t = {report.worst_t}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_classify(args) -> int:
    inst = load_instance(args.instance)
    if inst.autoequivalence is None:
        raise ValidationError("classify needs an auto-equivalence in the instance")
    _emit(_dumps(exact_report(inst.autoequivalence).to_dict()), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.count < 0:
        raise ValidationError("count must be >= 0")
    summary = run_sweep(args.suite, args.seed, args.count, args.jobs)
    if args.out is not None:
        _emit(_dumps(summary.to_dict()), args.out)
    print(
        f"{summary.suite}: {summary.passes} passed, {summary.failures} failed, "
        f"max violation {summary.max_violation:.17g}"
    )
    for r in summary.results:
        if not r.passed:
            print(f"  FAIL seed={r.seed} index={r.index} violation={r.violation:.17g}")
    return EXIT_OK if summary.passed else EXIT_VERIFY


_CATALOG_PARAMS = {
    "shift": (("n", int),),
    "gepner": (("w", float),),
    "dhkk": (("r", float), ("f0", int)),
    "spherical-twist": (("N", int),),
    "fractional-cy": (("m", int), ("n", int)),
    "serre-dim": (("lower", float), ("upper", float)),
}


def cmd_catalog(args) -> int:
    params = {}
    for key, kind in _CATALOG_PARAMS[args.name]:
        value = getattr(args, key)
        if value is None:
            raise ValidationError(f"{args.name} needs --{key}")
        params[key] = kind(value)
    cf = ClosedForm(args.name, params)
    grid = _resolve_grid(args, None)
    report = consistency_with_bounds(cf, grid)
    disp = closed_form_displacement(cf)
    if cf.name != "serre-dim":
        buf = io.StringIO()
        buf.write("t,h\n")
        for t in grid:
            buf.write(f"{t + 0.0:.17g},{closed_form_mass_growth(cf, t) + 0.0:.17g}\n")
        _emit(buf.getvalue(), args.out)
    else:
        lo, hi = cf.slopes()
        _emit(f"phi_minus,phi_plus\n{lo:.17g},{hi:.17g}\n", args.out)
    rep = {
        "name": cf.name,
        "params": params,
        "displacement": disp.d,
        "translation_length": disp.l,
        "displacement_lower_bound_only": disp.lower_bound_only,
        "max_region_violation": report.max_region_violation,
        "displacement_gap": report.displacement_gap,
        "quotient_lower": report.quotient_lower,
        "quotient_upper": report.quotient_upper,
        "quotient_free": report.quotient_free,
        "notes": list(report.notes),
        "passed": report.passed,
    }
    if args.report is not None:
        _emit(_dumps(rep), args.report)
    else:
        print(_dumps(rep), file=sys.stderr, end="")
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="massgrowth", description="Entropy, mass growth and Bridgeland-metric dynamics on D^b(F).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="entropy curve with bound columns as CSV")
    p.add_argument("--instance", required=True)
    p.add_argument("--grid", help="lo:hi:n (default -10:10:201)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("classify", help="isometry report of an auto-equivalence as JSON")
    p.add_argument("--instance", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="seeded verification sweep")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the per-instance JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="closed-form curve plus consistency report")
    p.add_argument("--name", required=True, choices=KINDS)
    for key in ("n", "w", "r", "f0", "N", "m", "lower", "upper"):
        p.add_argument(f"--{key}")
    p.add_argument("--grid")
    p.add_argument("--out")
    p.add_argument("--report", help="write the JSON consistency report here (default stderr)")
    p.set_defaults(func=cmd_catalog)
    return parser


def _glue_grid(argv: list[str]) -> list[str]:
    # "--grid -10:10:201" would otherwise be read as an option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--grid":
            out.append("--grid=" + next(it, ""))
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_grid(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return args.func(args)
    except NilpotentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NILPOTENT
    except (ValidationError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
