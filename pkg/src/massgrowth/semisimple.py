"""Stability conditions on D^b(F) and the Bridgeland metric.

A point of Stab(D^b(F)) = C^F is a mass m_i > 0 and a real phase phi_i for
each simple S_i.  Objects are direct sums of shifted simples, stored per slot
as a Laurent polynomial in which the coefficient of z^{-n} is the multiplicity
of S_i[n].  With this convention a functor matrix acts by matrix-vector
product and evaluation at z = e^{-t} weights S_i[n] by e^{nt}.

Closed forms for the metric and its quotient by C are derived in
docs/metric.md.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .laurent import LaurentMatrix, LaurentPoly


@dataclass(frozen=True)
class StabilityCondition:
    masses: tuple[float, ...]
    phases: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "masses", tuple(float(m) for m in self.masses))
        object.__setattr__(self, "phases", tuple(float(p) for p in self.phases))
        if len(self.masses) != len(self.phases):
            raise ValueError("masses and phases must have the same length")
        if not self.masses:
            raise ValueError("need at least one simple object")
        if not all(m > 0 and math.isfinite(m) for m in self.masses):
            raise ValueError(f"masses must be positive and finite: {self.masses}")
        if not all(math.isfinite(p) for p in self.phases):
            raise ValueError("phases must be finite")

    @property
    def size(self) -> int:
        return len(self.masses)

    def charges(self) -> np.ndarray:
        """Z(S_i) = m_i exp(i pi phi_i)."""
        return np.array(self.masses) * np.exp(1j * np.pi * np.array(self.phases))

    def to_dict(self) -> dict:
        return {"masses": list(self.masses), "phases": list(self.phases)}

    @classmethod
    def from_dict(cls, data: dict) -> "StabilityCondition":
        return cls(tuple(data["masses"]), tuple(data["phases"]))


@dataclass(frozen=True)
class GradedObject:
    """An object sum_{i,n} S_i[n]^{c_{i,n}}; slot i is sum_n c_{i,n} z^{-n}."""

    slots: tuple[LaurentPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))

    @classmethod
    def simple(cls, size: int, i: int, shift: int = 0, mult: int = 1) -> "GradedObject":
        """``S_i[shift]^mult``."""
        slots = [LaurentPoly.zero()] * size
        slots[i] = LaurentPoly.monomial(-shift, mult)
        return cls(tuple(slots))

    @classmethod
    def zero(cls, size: int) -> "GradedObject":
        return cls(tuple([LaurentPoly.zero()] * size))

    @property
    def size(self) -> int:
        return len(self.slots)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.slots)

    def summands(self) -> Iterator[tuple[int, int, int]]:
        """Yield (i, n, multiplicity) for each S_i[n] present."""
        for i, p in enumerate(self.slots):
            for d, c in p.terms:
                yield i, -d, c

    def shift(self, n: int) -> "GradedObject":
        return GradedObject(tuple(p.shift(-n) for p in self.slots))

    def __add__(self, other: "GradedObject") -> "GradedObject":
        if self.size != other.size:
            raise ValueError("size mismatch")
        return GradedObject(tuple(a + b for a, b in zip(self.slots, other.slots)))

    def to_lists(self) -> list[list[list[int]]]:
        return [p.to_pairs() for p in self.slots]

    @classmethod
    def from_lists(cls, data) -> "GradedObject":
        return cls(tuple(LaurentPoly.from_pairs(p) for p in data))


def _check_sizes(*sizes: int) -> None:
    if len(set(sizes)) != 1:
        raise ValueError(f"index-set mismatch: sizes {sizes}")


def mass_with_parameter(sigma: StabilityCondition, obj: GradedObject, t: float) -> float:
    """sum over HN factors S_i[n]^c of c m_i e^{(phi_i + n) t}; zero for 0."""
    _check_sizes(sigma.size, obj.size)
    return math.fsum(
        c * sigma.masses[i] * math.exp((sigma.phases[i] + n) * t) for i, n, c in obj.summands()
    )


def mass(sigma: StabilityCondition, obj: GradedObject) -> float:
    return mass_with_parameter(sigma, obj, 0.0)


def phase_range(sigma: StabilityCondition, obj: GradedObject) -> tuple[float, float]:
    """(phi^-, phi^+): the extreme phases of the HN factors of a nonzero object."""
    _check_sizes(sigma.size, obj.size)
    phases = [sigma.phases[i] + n for i, n, _ in obj.summands()]
    if not phases:
        raise ValueError("the zero object has no phases")
    return min(phases), max(phases)


def apply_functor(m: LaurentMatrix, obj: GradedObject) -> GradedObject:
    _check_sizes(m.size, obj.size)
    out = []
    for row in m.rows:
        acc = LaurentPoly.zero()
        for entry, slot in zip(row, obj.slots):
            if entry and slot:
                acc = acc + entry * slot
        out.append(acc)
    return GradedObject(tuple(out))


def object_distance(sigma: StabilityCondition, tau: StabilityCondition, obj: GradedObject) -> float:
    """The quantity whose supremum over nonzero objects defines d(sigma, tau)."""
    lo_s, hi_s = phase_range(sigma, obj)
    lo_t, hi_t = phase_range(tau, obj)
    return max(
        abs(math.log(mass(sigma, obj) / mass(tau, obj))),
        abs(hi_s - hi_t),
        abs(lo_s - lo_t),
    )


def bridgeland_distance(sigma: StabilityCondition, tau: StabilityCondition) -> float:
    """Closed form: max_i max(|log m_i/m'_i|, |phi_i - phi'_i|)."""
    _check_sizes(sigma.size, tau.size)
    return max(
        max(abs(math.log(a) - math.log(b)), abs(p - q))
        for a, b, p, q in zip(sigma.masses, tau.masses, sigma.phases, tau.phases)
    )


def c_action(sigma: StabilityCondition, w: complex) -> StabilityCondition:
    """Z -> e^{-i pi w} Z: phases drop by Re(w), masses scale by e^{pi Im(w)}."""
    w = complex(w)
    scale = math.exp(math.pi * w.imag)
    return StabilityCondition(
        tuple(m * scale for m in sigma.masses),
        tuple(p - w.real for p in sigma.phases),
    )


def _midpoint(values: Sequence[float]) -> float:
    return (max(values) + min(values)) / 2.0


@dataclass(frozen=True)
class QuotientPoint:
    """A C-orbit, stored by its canonical representative.

    The representative has max log m + min log m = 0 and
    max phi + min phi = 0.
    """

    representative: StabilityCondition

    @classmethod
    def of(cls, sigma: StabilityCondition) -> "QuotientPoint":
        logs = [math.log(m) for m in sigma.masses]
        shift_log = _midpoint(logs)
        shift_phase = _midpoint(sigma.phases)
        w = complex(shift_phase, -shift_log / math.pi)
        return cls(c_action(sigma, w))

    @property
    def size(self) -> int:
        return self.representative.size

    def isclose(self, other: "QuotientPoint", tol: float = 1e-12) -> bool:
        a, b = self.representative, other.representative
        return a.size == b.size and bridgeland_distance(a, b) <= tol


def _half_spread(values: Sequence[float]) -> float:
    return (max(values) - min(values)) / 2.0


def quotient_distance(p: QuotientPoint | StabilityCondition, q: QuotientPoint | StabilityCondition) -> float:
    """inf over w in C of d(sigma, tau . w), in closed form.

    Im(w) moves every log-mass ratio by the same amount and Re(w) moves every
    phase difference by the same amount, so the infimum splits into two
    one-dimensional Chebyshev-centre problems, each solved by the half-spread.
    """
    s = p.representative if isinstance(p, QuotientPoint) else p
    t = q.representative if isinstance(q, QuotientPoint) else q
    _check_sizes(s.size, t.size)
    a = [math.log(x / y) for x, y in zip(s.masses, t.masses)]
    b = [x - y for x, y in zip(s.phases, t.phases)]
    return max(_half_spread(a), _half_spread(b))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_stability(
    seed,
    size: int,
    mass_range: tuple[float, float] = (0.5, 2.0),
    phase_range: tuple[float, float] = (-1.0, 1.0),
) -> StabilityCondition:
    """Masses log-uniform on ``mass_range``, phases uniform on ``phase_range``."""
    lo, hi = mass_range
    if not 0 < lo <= hi:
        raise ValueError(f"mass range must be positive: {mass_range}")
    rng = _as_rng(seed)
    masses = np.exp(rng.uniform(math.log(lo), math.log(hi), size=size))
    phases = rng.uniform(phase_range[0], phase_range[1], size=size)
    return StabilityCondition(tuple(masses.tolist()), tuple(phases.tolist()))


def random_graded_object(
    seed,
    size: int,
    max_shift: int = 3,
    max_mult: int = 3,
    max_summands: int = 4,
) -> GradedObject:
    """A random nonzero object with up to ``max_summands`` shifted simples."""
    rng = _as_rng(seed)
    k = int(rng.integers(1, max_summands + 1))
    obj = GradedObject.zero(size)
    for _ in range(k):
        i = int(rng.integers(size))
        n = int(rng.integers(-max_shift, max_shift + 1))
        c = int(rng.integers(1, max_mult + 1))
        obj = obj + GradedObject.simple(size, i, n, c)
    return obj
