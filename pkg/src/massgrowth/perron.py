"""Perron root of nonnegative matrices and the entropy curve

    h_t(M) = log rho(M(e^{-t}))

of an endofunctor of D^b(F), with its asymptotic slopes and the
piecewise-linear region it must lie in.
"""
from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import matrix_balance

from .laurent import LaurentMatrix, degree_range, is_nilpotent

BOUND_TOL = 1e-9
DEFAULT_GRID = np.linspace(-10.0, 10.0, 201)


class NilpotentError(ValueError):
    """Raised for object-wise nilpotent functors, whose mass growth is -inf."""


def _as_nonnegative(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if np.any(a < 0):
        raise ValueError("matrix has negative entries")
    return a


def _log_radius_irreducible(a: np.ndarray) -> float:
    if a.shape[0] == 1:
        return math.log(a[0, 0]) if a[0, 0] > 0 else -math.inf
    # Balancing is an exact (power-of-two) diagonal similarity; it removes the
    # e^{+-50}-scale spread that M(e^{-t}) has at large |t|.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        b, _ = matrix_balance(a, permute=False)
    return math.log(np.abs(np.linalg.eigvals(b)).max())


def gelfand_log_radius(a, max_squarings: int = 64) -> float:
    """``log rho`` as the limit of ``log||a^n||/n`` along n = 2^j.

    Independent of any eigenvalue solver.  Products of nonnegative matrices
    have no cancellation, so each normalised squaring is accurate to a few ulps
    entrywise; convergence is O(log(C)/n) and can be slow for nearly
    decoupled blocks.
    """
    a = _as_nonnegative(a)
    s = a.max()
    if s == 0.0:
        return -math.inf
    b = a / s
    log_scale = math.log(s)
    est = log_scale
    extrap = None
    agree = 0
    for j in range(1, max_squarings + 1):
        b = b @ b
        s = b.max()
        if s == 0.0:
            return -math.inf
        b = b / s
        log_scale = 2.0 * log_scale + math.log(s)
        new = log_scale / 2.0**j
        new_extrap = 2.0 * new - est
        if extrap is not None and abs(new_extrap - extrap) <= 1e-15 * max(1.0, abs(new)):
            agree += 1
        else:
            agree = 0
        # short transients can mimic convergence; insist on n = 2^12 first
        if j >= 12 and agree >= 2:
            return new_extrap
        est, extrap = new, new_extrap
    return est


def _strong_components(pattern: np.ndarray) -> list[np.ndarray]:
    n = pattern.shape[0]
    reach = pattern | np.eye(n, dtype=bool)
    for _ in range(max(1, int(math.ceil(math.log2(n))))):
        reach = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
    mutual = reach & reach.T
    seen = np.zeros(n, dtype=bool)
    comps = []
    for i in range(n):
        if not seen[i]:
            idx = np.flatnonzero(mutual[i])
            seen[idx] = True
            comps.append(idx)
    return comps


def log_spectral_radius(a) -> float:
    """``log rho(a)`` for a nonnegative square matrix; ``-inf`` when rho = 0.

    The matrix is split into strongly connected components (rho of a reducible
    nonnegative matrix is the max over its diagonal blocks); each irreducible
    block is balanced and its eigenvalue moduli taken from LAPACK.
    """
    a = _as_nonnegative(a)
    best = -math.inf
    for idx in _strong_components(a > 0):
        block = a[np.ix_(idx, idx)]
        if len(idx) == 1 and block[0, 0] == 0.0:
            continue
        best = max(best, _log_radius_irreducible(block))
    return best


def spectral_radius(a) -> float:
    """Perron root of a nonnegative square matrix."""
    lr = log_spectral_radius(a)
    return 0.0 if lr == -math.inf else math.exp(lr)


def power_iteration_radius(a, tol: float = 1e-12, max_iter: int = 200_000) -> float:
    """Shifted power iteration; kept as an independent route for checks.

    Adding eps*I (eps = 1e-3 * max entry) breaks periodicity without changing
    the Perron eigenvector; the shift is subtracted at the end.  Suitable for
    moderately scaled matrices only.
    """
    a = _as_nonnegative(a)
    n = a.shape[0]
    top = a.max()
    if top == 0.0:
        return 0.0
    eps = 1e-3 * top
    b = a + eps * np.eye(n)
    v = np.ones(n) / n
    lam = 0.0
    for _ in range(max_iter):
        w = b @ v
        new = w.sum() / v.sum()
        v = w / w.sum()
        if abs(new - lam) < tol * abs(new):
            lam = new
            break
        lam = new
    return max(lam - eps, 0.0)


def gelfand_radius(a, n: int = 64) -> float:
    """``||a^n||^(1/n)`` with the max-row-sum norm."""
    a = _as_nonnegative(a)
    scale = a.max()
    if scale == 0.0:
        return 0.0
    p = np.linalg.matrix_power(a / scale, n)
    norm = np.abs(p).sum(axis=1).max()
    if norm == 0.0:
        return 0.0
    return scale * norm ** (1.0 / n)


class _EntropyFunction:
    """``t -> log rho(M(e^{-t}))`` with the support structure precomputed."""

    def __init__(self, m: LaurentMatrix):
        if is_nilpotent(m):
            raise NilpotentError("object-wise nilpotent functor: mass growth is -inf")
        self.size = m.size
        flat = [(i * m.size + j, d, c) for i, row in enumerate(m.rows) for j, e in enumerate(row) for d, c in e.terms]
        self._pos = np.array([f[0] for f in flat])
        self._deg = np.array([f[1] for f in flat], dtype=float)
        self._coef = np.array([float(f[2]) for f in flat])
        self._blocks = [idx for idx in _strong_components(m.support()) if len(idx) > 1 or m.rows[idx[0]][idx[0]]]

    def matrix(self, t: float, offset: float = 0.0) -> np.ndarray:
        """M(e^{-t}) scaled by e^{-offset}."""
        vals = self._coef * np.exp(-t * self._deg - offset)
        out = np.bincount(self._pos, weights=vals, minlength=self.size * self.size)
        return out.reshape(self.size, self.size)

    def __call__(self, t: float) -> float:
        # scale so the largest term is O(1); keeps large |t| out of overflow
        offset = float(np.max(-t * self._deg))
        a = self.matrix(t, offset)
        return offset + max(_log_radius_irreducible(a[np.ix_(idx, idx)]) for idx in self._blocks)


@lru_cache(maxsize=4096)
def _entropy_function(m: LaurentMatrix) -> _EntropyFunction:
    return _EntropyFunction(m)


def entropy_at(m: LaurentMatrix, t: float) -> float:
    """``log rho(M(e^{-t}))``."""
    return _entropy_function(m)(float(t))


def _cycle_mean(m: LaurentMatrix, lowest: bool) -> Fraction:
    """Minimum (lowest=True) or maximum cycle mean of the degree digraph.

    Edge i -> j carries the lowest (or highest) degree of entry (i, j).
    Karp's algorithm with every vertex as a start, in exact arithmetic.
    """
    n = m.size
    sign = 1 if lowest else -1
    edges = []
    for i in range(n):
        for j in range(n):
            e = m[i, j]
            if e:
                w = e.min_degree() if lowest else e.max_degree()
                edges.append((i, j, sign * w))
    inf = None
    dist: list[list[int | None]] = [[0] * n]
    for _ in range(n):
        prev = dist[-1]
        cur: list[int | None] = [inf] * n
        for i, j, w in edges:
            if prev[i] is not None:
                cand = prev[i] + w
                if cur[j] is None or cand < cur[j]:
                    cur[j] = cand
        dist.append(cur)
    best: Fraction | None = None
    for v in range(n):
        if dist[n][v] is None:
            continue
        worst = max(
            Fraction(dist[n][v] - dist[k][v], n - k)
            for k in range(n)
            if dist[k][v] is not None
        )
        if best is None or worst < best:
            best = worst
    if best is None:
        raise NilpotentError("degree digraph has no cycle")
    return sign * best


def asymptotic_slopes(m: LaurentMatrix) -> tuple[Fraction, Fraction]:
    """Exact ``(lim_{t->-inf} h_t/t, lim_{t->+inf} h_t/t)``.

    As x = e^{-t} -> 0 the Perron root of M(x) behaves like C x^mu, where mu
    is the minimum mean lowest-degree over cycles of the support digraph; as
    x -> inf it is the maximum mean highest-degree.  The slopes are -mu.
    These agree with the degree range (-D, -d) only when the extreme degrees
    sit on a cycle; see ``degree_slopes``.
    """
    if is_nilpotent(m):
        raise NilpotentError("object-wise nilpotent functor has no asymptotic slopes")
    phi_minus = -_cycle_mean(m, lowest=False)
    phi_plus = -_cycle_mean(m, lowest=True)
    return phi_minus, phi_plus


def degree_slopes(m: LaurentMatrix) -> tuple[int, int]:
    """``(-D, -d)`` from the degree range; outer bounds for the true slopes."""
    if is_nilpotent(m):
        raise NilpotentError("object-wise nilpotent functor")
    d, big_d = degree_range(m)
    return -big_d, -d


def pl_bounds(h0: float, phi_minus: float, phi_plus: float, t: float) -> tuple[float, float, float]:
    """Return (lower_basic, upper_basic, lower_sharp) at ``t``."""
    if t <= 0:
        lower = phi_minus * t
        upper = h0 + phi_minus * t
        sharp = max(phi_minus * t, h0 + phi_plus * t)
    else:
        lower = phi_plus * t
        upper = h0 + phi_plus * t
        sharp = max(phi_plus * t, h0 + phi_minus * t)
    return lower, upper, sharp


@dataclass(frozen=True)
class EntropySample:
    t: float
    value: float
    slope_minus: float
    slope_plus: float
    h_zero: float

    def bounds(self) -> tuple[float, float, float]:
        return pl_bounds(self.h_zero, self.slope_minus, self.slope_plus, self.t)


@dataclass(frozen=True)
class EntropyCurve:
    grid: tuple[float, ...]
    samples: tuple[EntropySample, ...]

    def __post_init__(self):
        if len(self.grid) != len(self.samples):
            raise ValueError("one sample per grid point")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")

    @property
    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,h,lower_basic,upper_basic,lower_sharp\n")
        for s in self.samples:
            lo, up, sharp = s.bounds()
            buf.write(",".join(f"{v + 0.0:.17g}" for v in (s.t, s.value, lo, up, sharp)) + "\n")
        return buf.getvalue()


def entropy_curve(m: LaurentMatrix, grid: Sequence[float] = DEFAULT_GRID) -> EntropyCurve:
    phi_minus, phi_plus = asymptotic_slopes(m)
    h0 = entropy_at(m, 0.0)
    samples = tuple(
        EntropySample(float(t), entropy_at(m, float(t)), float(phi_minus), float(phi_plus), h0)
        for t in grid
    )
    return EntropyCurve(tuple(float(t) for t in grid), samples)


@dataclass(frozen=True)
class BoundReport:
    max_violation: float
    worst_t: float | None
    h_zero: float
    phi_minus: float
    phi_plus: float
    tol: float = BOUND_TOL

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol


def check_pl_bounds(
    m: LaurentMatrix,
    grid: Sequence[float] = DEFAULT_GRID,
    slopes: tuple[float, float] | None = None,
) -> BoundReport:
    """Check the basic and sharpened piecewise-linear bounds on ``grid``.

    ``slopes`` overrides the exact asymptotic slopes.  With the coarser
    ``degree_slopes`` only the upper bound is guaranteed: entries off every
    cycle widen the degree range without affecting the spectral radius.
    """
    if slopes is None:
        slopes = asymptotic_slopes(m)
    phi_minus, phi_plus = float(slopes[0]), float(slopes[1])
    h0 = entropy_at(m, 0.0)
    worst, worst_t = 0.0, None
    for t in grid:
        t = float(t)
        h = entropy_at(m, t)
        lo, up, sharp = pl_bounds(h0, phi_minus, phi_plus, t)
        v = max(lo - h, h - up, sharp - h)
        if v > worst:
            worst, worst_t = v, t
    return BoundReport(worst, worst_t, h0, phi_minus, phi_plus)


def convexity_check(m: LaurentMatrix, grid: Sequence[float], tol: float = BOUND_TOL) -> bool:
    """Chord test on consecutive triples of a strictly increasing grid."""
    ts = [float(t) for t in grid]
    if len(ts) < 3:
        raise ValueError("need at least 3 grid points")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("grid must be strictly increasing")
    hs = [entropy_at(m, t) for t in ts]
    for (t0, t1, t2), (h0, h1, h2) in zip(zip(ts, ts[1:], ts[2:]), zip(hs, hs[1:], hs[2:])):
        lam = (t2 - t1) / (t2 - t0)
        if h1 > lam * h0 + (1 - lam) * h2 + tol:
            return False
    return True
