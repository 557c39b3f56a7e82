"""Closed-form mass growth and displacement for standard auto-equivalences.

These are reference formulas, not models of the underlying categories:

    shift [n]                  h_t = n t
    Gepner point, w real       h_t = w t
    DHKK pseudo-Anosov (r, f0) h_t = log|r| - f0 t
    spherical twist in D^N(Q)  h_t = (1 - N) t for t < 0, 0 for t >= 0
    fractional CY, S^n = [m]   h_t = m t / n
    Serre dimensions           only the two asymptotic slopes are known
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .perron import BOUND_TOL, pl_bounds

KINDS = ("shift", "gepner", "dhkk", "spherical-twist", "fractional-cy", "serre-dim")


@dataclass(frozen=True)
class ClosedForm:
    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in KINDS:
            raise ValueError(f"unknown catalog entry {self.name!r}; choose from {KINDS}")
        p = self.params
        required = {
            "shift": ("n",),
            "gepner": ("w",),
            "dhkk": ("r", "f0"),
            "spherical-twist": ("N",),
            "fractional-cy": ("m", "n"),
            "serre-dim": ("lower", "upper"),
        }[self.name]
        missing = [k for k in required if k not in p]
        if missing:
            raise ValueError(f"{self.name} needs parameters {missing}")
        if self.name == "gepner" and complex(p["w"]).imag != 0:
            raise ValueError("a Gepner point has real w (h_0 of alpha and its inverse are >= 0)")
        if self.name == "dhkk" and not abs(p["r"]) > 1:
            raise ValueError("DHKK stretch factor needs |r| > 1")
        if self.name == "dhkk" and int(p["f0"]) != p["f0"]:
            raise ValueError("f(0) must be an integer")
        if self.name == "spherical-twist" and (int(p["N"]) != p["N"] or p["N"] < 2):
            raise ValueError("spherical twist needs an integer N >= 2")
        if self.name == "fractional-cy" and (int(p["n"]) != p["n"] or p["n"] < 1):
            raise ValueError("fractional CY needs an integer n >= 1")
        if self.name == "serre-dim" and p["lower"] > p["upper"]:
            raise ValueError("lower Serre dimension exceeds the upper one")

    def slopes(self) -> tuple[float, float]:
        """(phi^-, phi^+)."""
        p = self.params
        if self.name == "shift":
            return float(p["n"]), float(p["n"])
        if self.name == "gepner":
            w = complex(p["w"]).real
            return w, w
        if self.name == "dhkk":
            return -float(p["f0"]), -float(p["f0"])
        if self.name == "spherical-twist":
            return 1.0 - p["N"], 0.0
        if self.name == "fractional-cy":
            s = float(Fraction(p["m"], p["n"]))
            return s, s
        return float(p["lower"]), float(p["upper"])

    def h_zero(self) -> float:
        if self.name == "serre-dim":
            raise ValueError("h_0 of the Serre functor is not determined by its Serre dimensions")
        if self.name == "dhkk":
            return math.log(abs(self.params["r"]))
        return 0.0

    def inverse_h_zero(self) -> float:
        """h_0 of the inverse, or 0 where only the trivial bound h_0 >= 0 is known."""
        if self.name == "dhkk":
            return math.log(abs(self.params["r"]))
        return 0.0


def closed_form_mass_growth(cf: ClosedForm, t: float) -> float:
    p = cf.params
    if cf.name == "shift":
        return p["n"] * t
    if cf.name == "gepner":
        return complex(p["w"]).real * t
    if cf.name == "dhkk":
        return math.log(abs(p["r"])) - p["f0"] * t
    if cf.name == "spherical-twist":
        return (1 - p["N"]) * t if t < 0 else 0.0
    if cf.name == "fractional-cy":
        return p["m"] * t / p["n"]
    raise ValueError("mass growth of the Serre functor is not determined by its Serre dimensions")


@dataclass(frozen=True)
class Displacement:
    d: float
    l: float | None
    lower_bound_only: bool = False


def closed_form_displacement(cf: ClosedForm) -> Displacement:
    p = cf.params
    if cf.name == "shift":
        return Displacement(abs(p["n"]), abs(p["n"]))
    if cf.name == "gepner":
        # alpha sigma = sigma . w rotates every phase by w, so d(sigma, alpha sigma) = |w|
        w = abs(complex(p["w"]).real)
        return Displacement(w, w)
    if cf.name == "dhkk":
        d = max(math.log(abs(p["r"])), abs(p["f0"]))
        return Displacement(d, d)
    if cf.name == "spherical-twist":
        return Displacement(p["N"] - 1, p["N"] - 1)
    if cf.name == "fractional-cy":
        return Displacement(abs(p["m"] / p["n"]), None)
    return Displacement(max(-p["lower"], p["upper"]), None, lower_bound_only=True)


@dataclass(frozen=True)
class ConsistencyReport:
    name: str
    max_region_violation: float
    displacement_gap: float
    quotient_lower: float
    quotient_upper: float
    quotient_free: bool = False
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return (
            self.max_region_violation <= BOUND_TOL
            and self.displacement_gap <= BOUND_TOL
            and self.quotient_lower <= self.quotient_upper + BOUND_TOL
        )


def consistency_with_bounds(cf: ClosedForm, grid: Sequence[float] = tuple(np.linspace(-10.0, 10.0, 201))) -> ConsistencyReport:
    """Check a closed form against the piecewise-linear region and the
    displacement bounds built from its own (h_0, phi^-, phi^+)."""
    phi_minus, phi_plus = cf.slopes()
    disp = closed_form_displacement(cf)
    notes = []
    if cf.name == "serre-dim":
        # only the slopes are known: check the lower bound on d
        gap = max(0.0, max(abs(phi_minus), abs(phi_plus)) - disp.d)
        q_lower = (phi_plus - phi_minus) / 2
        return ConsistencyReport(cf.name, 0.0, gap, q_lower, disp.d, q_lower > 0, ("slopes only",))
    h0 = cf.h_zero()
    worst = 0.0
    for t in grid:
        t = float(t)
        h = closed_form_mass_growth(cf, t)
        lo, up, sharp = pl_bounds(h0, phi_minus, phi_plus, t)
        worst = max(worst, lo - h, h - up, sharp - h)
    metric = max(h0, abs(phi_minus), abs(phi_plus))
    gap = abs(metric - disp.d)
    if disp.l is not None and disp.l < disp.d - BOUND_TOL:
        gap = max(gap, disp.d - disp.l)
        notes.append("translation length below eventual displacement")
    q_lower = max((h0 + cf.inverse_h_zero()) / 2, (phi_plus - phi_minus) / 2)
    q_upper = metric
    if h0 == 0.0 and phi_minus != phi_plus:
        notes.append("piecewise-linear with a kink at t = 0")
    return ConsistencyReport(cf.name, worst, gap, q_lower, q_upper, q_lower > 0, tuple(notes))
