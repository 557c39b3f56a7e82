"""Laurent polynomials with nonnegative integer coefficients, and square
matrices over them.

An exact endofunctor of D^b(F) is stored as an F x F matrix whose entries are
the Poincare polynomials of the components of its kernel.  Coefficients are
Python ints, so powers never overflow.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np


class LaurentPoly:
    """Element of N[z, z^-1], stored as a sorted tuple of (degree, coeff) pairs.

    Zero coefficients are never stored; the zero polynomial has no terms.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for deg, c in items:
            if int(deg) != deg or int(c) != c:
                raise TypeError("degrees and coefficients must be integers")
            if c < 0:
                raise ValueError(f"negative coefficient {c} at degree {deg}")
            if c:
                acc[int(deg)] = acc.get(int(deg), 0) + int(c)
        self._terms = tuple(sorted(acc.items()))
        self._hash = hash(self._terms)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "LaurentPoly":
        return cls({degree: coeff})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, degree: int) -> int:
        return dict(self._terms).get(degree, 0)

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degrees")
        return self._terms[0][0]

    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degrees")
        return self._terms[-1][0]

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by z^k."""
        return LaurentPoly((d + k, c) for d, c in self._terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self._terms + other._terms)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly((d, c * other) for d, c in self._terms)
        out: dict[int, int] = {}
        for d1, c1 in self._terms:
            for d2, c2 in other._terms:
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __call__(self, x: float) -> float:
        return poly_eval(self, x)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, c in reversed(self._terms):
            mono = "" if d == 0 else ("z" if d == 1 else f"z^{d}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(parts)

    def to_pairs(self) -> list[list[int]]:
        return [[d, c] for d, c in self._terms]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "LaurentPoly":
        out = []
        for pair in pairs:
            if len(pair) != 2:
                raise ValueError(f"expected [degree, coefficient], got {pair!r}")
            out.append((pair[0], pair[1]))
        return cls(out)


def poly_eval(p: LaurentPoly, x: float) -> float:
    """Evaluate ``p`` at a positive real ``x``."""
    if not x > 0:
        raise ValueError(f"evaluation point must be positive, got {x}")
    return float(sum(c * x**d for d, c in p.terms))


class LaurentMatrix:
    """Square matrix over N[z, z^-1]; immutable."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Sequence[Sequence[LaurentPoly | int]]):
        n = len(rows)
        if n < 1:
            raise ValueError("matrix must have size >= 1")
        conv = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            conv.append(tuple(e if isinstance(e, LaurentPoly) else LaurentPoly({0: e}) for e in row))
        self._rows = tuple(conv)
        self._hash = hash(self._rows)

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        one, zero = LaurentPoly.one(), LaurentPoly.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "LaurentMatrix":
        return cls([[LaurentPoly.zero()] * n for _ in range(n)])

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[LaurentPoly, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self._rows[i][j]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self._rows for e in row)

    def shift(self, k: int) -> "LaurentMatrix":
        """Multiply every entry by z^k (composition with the shift [-k])."""
        return LaurentMatrix([[e.shift(k) for e in row] for row in self._rows])

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        return LaurentMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)]
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "LaurentMatrix([" + ", ".join(
            "[" + ", ".join(repr(e) for e in row) + "]" for row in self._rows
        ) + "])"

    def evaluate(self, x: float) -> np.ndarray:
        """Entrywise evaluation at ``x > 0`` as a float array."""
        if not x > 0:
            raise ValueError(f"evaluation point must be positive, got {x}")
        return np.array([[poly_eval(e, x) for e in row] for row in self._rows], dtype=float)

    def support(self) -> np.ndarray:
        """Boolean pattern of nonzero entries."""
        return np.array([[not e.is_zero() for e in row] for row in self._rows], dtype=bool)

    def to_lists(self) -> list[list[list[list[int]]]]:
        return [[e.to_pairs() for e in row] for row in self._rows]

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[Iterable[Sequence[int]]]]) -> "LaurentMatrix":
        return cls([[LaurentPoly.from_pairs(e) for e in row] for row in data])


def mat_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    n = a.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc: dict[int, int] = {}
            for k in range(n):
                p, q = a.rows[i][k], b.rows[k][j]
                if not p or not q:
                    continue
                for d1, c1 in p.terms:
                    for d2, c2 in q.terms:
                        acc[d1 + d2] = acc.get(d1 + d2, 0) + c1 * c2
            row.append(LaurentPoly(acc))
        out.append(row)
    return LaurentMatrix(out)


def mat_pow(a: LaurentMatrix, n: int) -> LaurentMatrix:
    """``a**n`` by repeated squaring; ``a**0`` is the identity."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    result = LaurentMatrix.identity(a.size)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def is_nilpotent(a: LaurentMatrix) -> bool:
    # Coefficients are nonnegative, so an entry of A(z)^n vanishes iff the same
    # entry of A(1)^n does; the boolean pattern carries the same information
    # without integer growth.
    n = a.size
    pattern = a.support().astype(np.int64)
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        power = ((power @ pattern) > 0).astype(np.int64)
    return not power.any()


def degree_range(a: LaurentMatrix) -> tuple[int, int]:
    """Lowest and highest power of z occurring in any entry."""
    degs = [d for row in a.rows for e in row for d, _ in e.terms]
    if not degs:
        raise ValueError("zero matrix has no degrees")
    return min(degs), max(degs)


def monomial_matrix(perm: Sequence[int], exponents: Sequence[int]) -> LaurentMatrix:
    """Matrix with entry (perm[i], i) = z^exponents[i] and zeros elsewhere."""
    n = len(perm)
    rows = [[LaurentPoly.zero()] * n for _ in range(n)]
    for i, (j, m) in enumerate(zip(perm, exponents)):
        rows[j][i] = LaurentPoly.monomial(m)
    return LaurentMatrix(rows)


def random_laurent_matrix(
    rng: np.random.Generator,
    size: int,
    degree_bounds: tuple[int, int] = (-5, 5),
    density: float = 0.6,
    max_terms: int = 2,
    max_coeff: int = 3,
    allow_nilpotent: bool = False,
) -> LaurentMatrix:
    """Sample a matrix; resamples until non-nilpotent unless told otherwise."""
    lo, hi = degree_bounds
    while True:
        rows = []
        for _ in range(size):
            row = []
            for _ in range(size):
                if rng.random() < density:
                    k = int(rng.integers(1, max_terms + 1))
                    degs = rng.integers(lo, hi + 1, size=k)
                    cs = rng.integers(1, max_coeff + 1, size=k)
                    row.append(LaurentPoly(zip(degs.tolist(), cs.tolist())))
                else:
                    row.append(LaurentPoly.zero())
            rows.append(row)
        m = LaurentMatrix(rows)
        if allow_nilpotent or not is_nilpotent(m):
            return m
