"""Seeded verification sweeps shared by the CLI and the acceptance tests.

Instance ``i`` of a sweep started at ``seed`` draws everything from
``numpy.random.default_rng([seed, i])``, so results do not depend on how the
sweep is split across workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dynamics import (
    ESTIMATE_TOL,
    estimate_displacement,
    exact_report,
    mass_growth_estimate,
    mass_growth_exact,
    random_autoequivalence,
    verify_free_proper,
    verify_metric_bounds,
    verify_quotient_bounds,
    conjugation_invariance_check,
    act,
)
from .laurent import random_laurent_matrix
from .perron import check_pl_bounds
from .semisimple import bridgeland_distance, random_stability


@dataclass(frozen=True)
class InstanceResult:
    seed: int
    index: int
    passed: bool
    violation: float
    instance: dict

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "index": self.index,
            "passed": self.passed,
            "violation": self.violation,
            "instance": self.instance,
        }


def _auto_instance(rng):
    alpha = random_autoequivalence(rng, max_size=6, max_shift=5)
    sigma = random_stability(rng, alpha.size)
    return alpha, sigma, {"autoequivalence": alpha.to_dict(), "stability": sigma.to_dict()}


def _metric_bounds(rng):
    alpha, sigma, inst = _auto_instance(rng)
    rep = verify_metric_bounds(alpha, sigma)
    v = float(max(abs(rep.displacement - rep.bound_from_power), abs(rep.displacement - rep.bound_from_slopes)))
    v = max(v, abs(rep.h_zero))
    return rep.equal, v, inst


def _free_proper(rng):
    alpha, sigma, inst = _auto_instance(rng)
    if exact_report(alpha).eventual_displacement == 0:
        return True, 0.0, inst
    rep = verify_free_proper(alpha, sigma)
    return rep.passed, max(0.0, 2 * rep.epsilon - rep.min_separation), inst


def _quotient_bounds(rng):
    alpha, sigma, inst = _auto_instance(rng)
    rep = verify_quotient_bounds(alpha, sigma)
    v = max(0.0, rep.lower - rep.tol - rep.estimate, rep.estimate - rep.upper - 1e-9)
    return rep.passed, v, inst


def _conjugation(rng):
    alpha = random_autoequivalence(rng, max_size=6, max_shift=5)
    beta = random_autoequivalence(rng, size=alpha.size, max_shift=5)
    rep = conjugation_invariance_check(alpha, beta)
    inst = {"alpha": alpha.to_dict(), "beta": beta.to_dict()}
    return rep.passed, max(rep.max_growth_gap, rep.max_entropy_gap), inst


def _pl_bounds(rng):
    m = random_laurent_matrix(rng, int(rng.integers(1, 5)))
    rep = check_pl_bounds(m)
    return rep.passed, rep.max_violation, {"matrix": m.to_lists()}


def _displacement(rng):
    alpha, sigma, inst = _auto_instance(rng)
    est = estimate_displacement(alpha, sigma)
    rep = exact_report(alpha)
    d = float(rep.eventual_displacement)
    witness_gap = abs(bridgeland_distance(rep.witness, act(alpha, rep.witness)) - float(rep.translation_length))
    v = max(0.0, d - est.infimum - 1e-12, est.infimum - d - ESTIMATE_TOL, witness_gap - 1e-12)
    return v == 0.0, max(d - est.infimum, est.infimum - d - ESTIMATE_TOL, witness_gap, 0.0), inst


def _mass_growth(rng):
    alpha, sigma, inst = _auto_instance(rng)
    gap = max(abs(mass_growth_estimate(alpha, sigma, t) - mass_growth_exact(alpha, t)) for t in (-2.0, 0.0, 2.0))
    return gap <= ESTIMATE_TOL, gap, inst


SUITES: dict[str, Callable] = {
    "metric-bounds": _metric_bounds,
    "free-proper": _free_proper,
    "quotient-bounds": _quotient_bounds,
    "conjugation": _conjugation,
    "pl-bounds": _pl_bounds,
    "displacement": _displacement,
    "mass-growth": _mass_growth,
}


def run_instance(suite: str, seed: int, index: int) -> InstanceResult:
    rng = np.random.default_rng([seed, index])
    passed, violation, inst = SUITES[suite](rng)
    return InstanceResult(seed, index, bool(passed), float(violation), inst)


def _run_packed(args):
    return run_instance(*args)


@dataclass(frozen=True)
class SweepSummary:
    suite: str
    seed: int
    results: tuple[InstanceResult, ...]

    @property
    def passes(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def failures(self) -> int:
        return len(self.results) - self.passes

    @property
    def max_violation(self) -> float:
        return max((r.violation for r in self.results), default=0.0)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": len(self.results),
            "passes": self.passes,
            "failures": self.failures,
            "max_violation": self.max_violation,
            "instances": [r.to_dict() for r in self.results],
        }


def run_sweep(suite: str, seed: int = 0, count: int = 100, jobs: int = 1) -> SweepSummary:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    tasks = [(suite, seed, i) for i in range(count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map preserves submission order, so output is ordered by index
            results = list(pool.map(_run_packed, tasks, chunksize=max(1, count // (4 * jobs))))
    else:
        results = [run_instance(*t) for t in tasks]
    return SweepSummary(suite, seed, tuple(results))


def finite_or_none(x: float) -> float | None:
    return x if math.isfinite(x) else None
