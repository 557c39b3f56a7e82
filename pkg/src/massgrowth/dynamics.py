"""Auto-equivalences of D^b(F) acting isometrically on Stab(D^b(F)).

An auto-equivalence sends S_i to S_{pi(i)}[-m_i].  Its matrix has entry
(pi(i), i) equal to z^{m_i}.  Exact quantities (orders, orbit sums,
displacements) are kept as ints and Fractions; floats only appear in orbit
numerics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .laurent import LaurentMatrix, degree_range, mat_pow, monomial_matrix
from .perron import asymptotic_slopes, entropy_at
from .semisimple import (
    GradedObject,
    StabilityCondition,
    apply_functor,
    bridgeland_distance,
    mass_with_parameter,
    quotient_distance,
)

DEFAULT_NMAX = 60
ESTIMATE_TOL = 0.15


class NotApplicableError(ValueError):
    pass


@dataclass(frozen=True)
class AutoEquivalence:
    perm: tuple[int, ...]
    shifts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        object.__setattr__(self, "shifts", tuple(int(m) for m in self.shifts))
        n = len(self.perm)
        if n == 0:
            raise ValueError("need at least one simple object")
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.perm}")
        if len(self.shifts) != n:
            raise ValueError("one shift per simple object")

    @classmethod
    def identity(cls, n: int) -> "AutoEquivalence":
        return cls(tuple(range(n)), (0,) * n)

    @classmethod
    def shift_functor(cls, n: int, k: int) -> "AutoEquivalence":
        """The shift [k] on D^b(F) with |F| = n."""
        return cls(tuple(range(n)), (-k,) * n)

    @property
    def size(self) -> int:
        return len(self.perm)

    def matrix(self) -> LaurentMatrix:
        return monomial_matrix(self.perm, self.shifts)

    def compose(self, other: "AutoEquivalence") -> "AutoEquivalence":
        """``self`` after ``other``."""
        if self.size != other.size:
            raise ValueError("size mismatch")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.size))
        shifts = tuple(other.shifts[i] + self.shifts[other.perm[i]] for i in range(self.size))
        return AutoEquivalence(perm, shifts)

    __matmul__ = compose

    def inverse(self) -> "AutoEquivalence":
        inv = [0] * self.size
        for i, j in enumerate(self.perm):
            inv[j] = i
        return AutoEquivalence(tuple(inv), tuple(-self.shifts[inv[j]] for j in range(self.size)))

    def power(self, n: int) -> "AutoEquivalence":
        base = self if n >= 0 else self.inverse()
        result = AutoEquivalence.identity(self.size)
        for _ in range(abs(n)):
            result = base.compose(result)
        return result

    def then_shift(self, d: int) -> "AutoEquivalence":
        """alpha o [d]."""
        return self.compose(AutoEquivalence.shift_functor(self.size, d))

    def orbits(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for i in range(self.size):
            if i in seen:
                continue
            cyc = [i]
            j = self.perm[i]
            while j != i:
                cyc.append(j)
                j = self.perm[j]
            seen.update(cyc)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(o) for o in self.orbits()))

    def orbit_sums(self) -> list[int]:
        return [sum(self.shifts[j] for j in o) for o in self.orbits()]

    def diagonal_exponents(self) -> list[int]:
        """Exponents n_i with M^k = Diag(z^{n_i}), k the order of pi."""
        k = self.order()
        out = [0] * self.size
        for o, s in zip(self.orbits(), self.orbit_sums()):
            for i in o:
                out[i] = s * (k // len(o))
        return out

    def orbit_slopes(self) -> list[Fraction]:
        """Per-orbit phase drift -s/#O of mass growth (one entry per orbit)."""
        return [Fraction(-s, len(o)) for o, s in zip(self.orbits(), self.orbit_sums())]

    def to_dict(self) -> dict:
        return {"permutation": list(self.perm), "shifts": list(self.shifts)}

    @classmethod
    def from_dict(cls, data: dict) -> "AutoEquivalence":
        return cls(tuple(data["permutation"]), tuple(data["shifts"]))


def random_autoequivalence(seed, max_size: int = 6, max_shift: int = 5, size: int | None = None) -> AutoEquivalence:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    n = size if size is not None else int(rng.integers(1, max_size + 1))
    perm = rng.permutation(n).tolist()
    shifts = rng.integers(-max_shift, max_shift + 1, size=n).tolist()
    return AutoEquivalence(tuple(perm), tuple(shifts))


def act(alpha: AutoEquivalence, sigma: StabilityCondition) -> StabilityCondition:
    """alpha . sigma: S_{pi(i)} gets mass m_i and phase phi_i + m_i."""
    if alpha.size != sigma.size:
        raise ValueError("size mismatch")
    masses = [0.0] * alpha.size
    phases = [0.0] * alpha.size
    for i, (j, m) in enumerate(zip(alpha.perm, alpha.shifts)):
        masses[j] = sigma.masses[i]
        phases[j] = sigma.phases[i] + m
    return StabilityCondition(tuple(masses), tuple(phases))


def isometry_check(alpha: AutoEquivalence, sigma: StabilityCondition, tau: StabilityCondition) -> float:
    return abs(bridgeland_distance(act(alpha, sigma), act(alpha, tau)) - bridgeland_distance(sigma, tau))


@dataclass(frozen=True)
class IsometryReport:
    order: int
    orbits: tuple[tuple[int, ...], ...]
    orbit_totals: tuple[int, ...]
    diagonal_exponents: tuple[int, ...]
    eventual_displacement: Fraction
    translation_length: Fraction
    witness: StabilityCondition
    attained: bool
    classification: str
    conventional_classification: str

    def to_dict(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"num": x.numerator, "den": x.denominator}

        return {
            "order": self.order,
            "orbits": [list(o) for o in self.orbits],
            "orbit_totals": list(self.orbit_totals),
            "diagonal_exponents": list(self.diagonal_exponents),
            "eventual_displacement": frac(self.eventual_displacement),
            "translation_length": frac(self.translation_length),
            "classification": self.classification,
            "conventional_classification": self.conventional_classification,
            "attained": self.attained,
            "witness": self.witness.to_dict(),
        }


def _witness_phases(alpha: AutoEquivalence) -> list[Fraction]:
    # phi_{pi(i)} - phi_i = m_i - s/#O around each cycle, first phase fixed at 0
    phases = [Fraction(0)] * alpha.size
    for o, s in zip(alpha.orbits(), alpha.orbit_sums()):
        drift = Fraction(s, len(o))
        for i in o[:-1]:
            phases[alpha.perm[i]] = phases[i] + alpha.shifts[i] - drift
    return phases


def exact_report(alpha: AutoEquivalence) -> IsometryReport:
    k = alpha.order()
    orbits = alpha.orbits()
    sums = alpha.orbit_sums()
    diag = alpha.diagonal_exponents()
    d = max(Fraction(abs(n), k) for n in diag)
    lt = max(Fraction(abs(s), len(o)) for o, s in zip(orbits, sums))

    phases = _witness_phases(alpha)
    moved = [Fraction(0)] * alpha.size
    for i, (j, m) in enumerate(zip(alpha.perm, alpha.shifts)):
        moved[j] = phases[i] + m
    # masses are all 1 and merely permuted, so the displacement is the phase term
    witness_distance = max(abs(a - b) for a, b in zip(moved, phases))
    attained = witness_distance == lt

    if lt == 0 and witness_distance == 0:
        classification = "elliptic"
    elif attained:
        classification = "hyperbolic"
    else:
        classification = "parabolic"

    if alpha.perm == tuple(range(alpha.size)) and not any(alpha.shifts):
        conventional = "elliptic"
    elif len(orbits) == 1 and lt > 0:
        conventional = "hyperbolic"
    else:
        conventional = "parabolic"

    witness = StabilityCondition((1.0,) * alpha.size, tuple(float(p) for p in phases))
    return IsometryReport(
        order=k,
        orbits=tuple(orbits),
        orbit_totals=tuple(sums),
        diagonal_exponents=tuple(diag),
        eventual_displacement=d,
        translation_length=lt,
        witness=witness,
        attained=attained,
        classification=classification,
        conventional_classification=conventional,
    )


@dataclass(frozen=True)
class DisplacementEstimate:
    ratios: tuple[float, ...]
    infimum: float
    exact: Fraction
    envelope: float = field(default=0.0)

    @property
    def error(self) -> float:
        return self.infimum - float(self.exact)


def orbit(alpha: AutoEquivalence, sigma: StabilityCondition, n_max: int) -> list[StabilityCondition]:
    """[sigma, alpha sigma, ..., alpha^n_max sigma]."""
    pts = [sigma]
    for _ in range(n_max):
        pts.append(act(alpha, pts[-1]))
    return pts


def estimate_displacement(alpha: AutoEquivalence, sigma: StabilityCondition, n_max: int = DEFAULT_NMAX) -> DisplacementEstimate:
    """Ratios d(sigma, alpha^n sigma)/n and their running infimum.

    The sequence is subadditive, so its infimum is its limit; ``envelope`` is
    2K/n_max with K = max_{j <= k} d(sigma, alpha^j sigma).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    pts = orbit(alpha, sigma, n_max)
    ratios = tuple(bridgeland_distance(sigma, pts[n]) / n for n in range(1, n_max + 1))
    k = alpha.order()
    far = orbit(alpha, sigma, k)
    big_k = max(bridgeland_distance(sigma, p) for p in far)
    return DisplacementEstimate(ratios, min(ratios), exact_report(alpha).eventual_displacement, 2 * big_k / n_max)


def mass_growth_slopes(alpha: AutoEquivalence) -> tuple[Fraction, Fraction]:
    """(phi^-, phi^+) of an auto-equivalence, exactly."""
    slopes = alpha.orbit_slopes()
    return min(slopes), max(slopes)


def mass_growth_exact(alpha: AutoEquivalence, t: float) -> float:
    """Piecewise-linear mass growth: phi^- t for t <= 0, phi^+ t for t >= 0."""
    lo, hi = mass_growth_slopes(alpha)
    return float(lo) * t if t <= 0 else float(hi) * t


def mass_growth_estimate(alpha: AutoEquivalence, sigma: StabilityCondition, t: float, n_max: int = DEFAULT_NMAX) -> float:
    """max_i (1/n) log m_{sigma,t}(alpha^n S_i) at n = n_max."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    power = mat_pow(alpha.matrix(), n_max)
    best = -math.inf
    for i in range(alpha.size):
        image = apply_functor(power, GradedObject.simple(alpha.size, i))
        if image.is_zero():
            continue
        best = max(best, math.log(mass_with_parameter(sigma, image, t)) / n_max)
    if best == -math.inf:
        raise ValueError("functor kills every simple: mass growth is -inf")
    return best


@dataclass(frozen=True)
class MetricBoundReport:
    displacement: Fraction
    bound_from_power: Fraction
    bound_from_slopes: Fraction
    h_zero: float

    @property
    def equal(self) -> bool:
        return self.displacement == self.bound_from_power == self.bound_from_slopes and abs(self.h_zero) <= 1e-12


def verify_metric_bounds(alpha: AutoEquivalence, sigma: StabilityCondition | None = None) -> MetricBoundReport:
    """Equality d(alpha) = max{h_0, |phi^-|, |phi^+|}.

    h_0 = log rho(M(1)) vanishes because M(1) is a permutation matrix.  The
    slopes are taken two ways: from the degree range of M^k divided by k, and
    from the exact asymptotic slopes of M itself.  ``sigma`` is accepted for
    interface symmetry; none of these quantities depend on it.
    """
    m = alpha.matrix()
    k = alpha.order()
    lo, hi = degree_range(mat_pow(m, k))
    from_power = max(Fraction(abs(lo), k), Fraction(abs(hi), k))
    phi_minus, phi_plus = asymptotic_slopes(m)
    from_slopes = max(abs(phi_minus), abs(phi_plus))
    h0 = entropy_at(m, 0.0)
    return MetricBoundReport(exact_report(alpha).eventual_displacement, from_power, from_slopes, h0)


@dataclass(frozen=True)
class FreeProperReport:
    epsilon: float
    min_separation: float
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0


def verify_free_proper(alpha: AutoEquivalence, sigma: StabilityCondition, n_max: int = DEFAULT_NMAX) -> FreeProperReport:
    d = exact_report(alpha).eventual_displacement
    if d == 0:
        raise NotApplicableError("eventual displacement is 0; the criterion does not apply")
    eps = float(d) / 4
    pts = orbit(alpha, sigma, n_max)
    seps = [bridgeland_distance(sigma, p) for p in pts[1:]]
    violations = sum(1 for s in seps if s < 2 * eps - 1e-12)
    return FreeProperReport(eps, min(seps), violations)


@dataclass(frozen=True)
class QuotientBoundReport:
    estimate: float
    lower: float
    upper: float
    slack: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.lower - self.tol <= self.estimate <= self.upper + 1e-9


def quotient_displacement_estimate(alpha: AutoEquivalence, sigma: StabilityCondition, n_max: int = DEFAULT_NMAX) -> float:
    pts = orbit(alpha, sigma, n_max)
    return min(quotient_distance(sigma, pts[n]) / n for n in range(1, n_max + 1))


def verify_quotient_bounds(
    alpha: AutoEquivalence,
    sigma: StabilityCondition,
    n_max: int = DEFAULT_NMAX,
    tol: float = ESTIMATE_TOL,
) -> QuotientBoundReport:
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    m = alpha.matrix()
    h0 = entropy_at(m, 0.0)
    h0_inv = entropy_at(alpha.inverse().matrix(), 0.0)
    phi_minus, phi_plus = asymptotic_slopes(m)
    lower = max((h0 + h0_inv) / 2, float(phi_plus - phi_minus) / 2)
    upper = max(h0, abs(float(phi_minus)), abs(float(phi_plus)))
    est = quotient_displacement_estimate(alpha, sigma, n_max)
    far = orbit(alpha, sigma, alpha.order())
    slack = 2 * max(quotient_distance(sigma, p) for p in far) / n_max
    return QuotientBoundReport(est, lower, upper, slack, tol)


@dataclass(frozen=True)
class ConjugationReport:
    max_growth_gap: float
    max_entropy_gap: float
    same_displacement: bool
    same_translation_length: bool

    @property
    def passed(self) -> bool:
        return (
            self.max_growth_gap <= 1e-9
            and self.max_entropy_gap <= 1e-9
            and self.same_displacement
            and self.same_translation_length
        )


def conjugation_invariance_check(
    alpha: AutoEquivalence,
    beta: AutoEquivalence,
    grid: Sequence[float] = tuple(np.linspace(-5.0, 5.0, 21)),
) -> ConjugationReport:
    """Compare beta with alpha^{-1} beta alpha."""
    conj = alpha.inverse().compose(beta).compose(alpha)
    growth = max(abs(mass_growth_exact(conj, t) - mass_growth_exact(beta, t)) for t in grid)
    mc, mb = conj.matrix(), beta.matrix()
    ent = max(abs(entropy_at(mc, t) - entropy_at(mb, t)) for t in grid)
    rc, rb = exact_report(conj), exact_report(beta)
    return ConjugationReport(
        growth,
        ent,
        rc.eventual_displacement == rb.eventual_displacement,
        rc.translation_length == rb.translation_length,
    )
