"""Projective points, spans, monomial bookkeeping and hypersurfaces.

Coordinates live in F_p.  Points and directions are normalized so the
first nonzero coordinate is 1: equality, hashing and set semantics are
then plain tuple equality.  The degree-d monomial basis is frozen in
graded-lex order (exponent tuples descending lexicographically), so every
matrix and report built on it is bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .linalg import Matrix, dot_mod, inv_mod, matvec_mod, rank


class EmptyInput(ValueError):
    pass


def _normalize(coords: Sequence[int], p: int) -> tuple[int, ...]:
    vals = [int(c) % p for c in coords]
    lead = next((i for i, c in enumerate(vals) if c), None)
    if lead is None:
        raise ValueError("projective coordinates cannot all vanish")
    inv = inv_mod(vals[lead], p)
    return tuple(c * inv % p for c in vals)


@dataclass(frozen=True)
class Point:
    """Point of P^n over F_p, canonical representative (leading 1)."""

    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coords", _normalize(self.coords, self.p))

    @property
    def n(self) -> int:
        return len(self.coords) - 1


@dataclass(frozen=True)
class Direction:
    """Tangent direction at a point, normalized like a Point.

    Directions are only meaningful modulo scalars and modulo the base
    point itself (Euler direction); callers canonicalize against the base
    with :func:`reduce_mod_point` before storing when that matters.
    """

    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coords", _normalize(self.coords, self.p))

    @property
    def n(self) -> int:
        return len(self.coords) - 1


def reduce_mod_point(vec: Sequence[int], base: Point) -> tuple[int, ...] | None:
    """Canonical representative of vec modulo the span of base.

    Subtracts the multiple of base that zeroes vec at base's leading
    coordinate.  Returns None when vec is proportional to base.
    """
    p = base.p
    lead = next(i for i, c in enumerate(base.coords) if c)
    v = [int(c) % p for c in vec]
    scale = v[lead]  # base has a 1 at lead
    reduced = tuple((c - scale * b) % p for c, b in zip(v, base.coords))
    if not any(reduced):
        return None
    return reduced


@lru_cache(maxsize=None)
def monomial_exponents(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of the degree-d monomials in n+1 variables,
    graded-lex (descending lexicographic)."""
    if n < 0 or d < 0:
        raise ValueError("need n >= 0 and d >= 0")

    def gen(nvars: int, total: int):
        if nvars == 1:
            yield (total,)
            return
        for e in range(total, -1, -1):
            for rest in gen(nvars - 1, total - e):
                yield (e,) + rest

    return tuple(gen(n + 1, d))


def monomial_count(n: int, d: int) -> int:
    """Dimension of the space of degree-d forms on P^n."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return comb(n + d, n)


@dataclass(frozen=True)
class MonomialBasis:
    """The frozen graded-lex basis of degree-d monomials on P^n."""

    n: int
    d: int
    exponents: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "exponents", monomial_exponents(self.n, self.d))

    def __len__(self) -> int:
        return len(self.exponents)

    def index(self, exponent: tuple[int, ...]) -> int:
        return self.exponents.index(exponent)


@dataclass(frozen=True)
class Hypersurface:
    """Degree-t hypersurface of P^n given by coefficients over the basis."""

    n: int
    degree: int
    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        vals = tuple(int(c) % self.p for c in self.coeffs)
        if len(vals) != monomial_count(self.n, self.degree):
            raise ValueError("coefficient vector does not match the basis")
        if not any(vals):
            raise ValueError("hypersurface cannot be identically zero")
        object.__setattr__(self, "coeffs", vals)


def _exponent_array(n: int, d: int) -> np.ndarray:
    return np.asarray(monomial_exponents(n, d), dtype=np.int64)


def _power_table(coords: Sequence[int], d: int, p: int) -> np.ndarray:
    """pows[i, k] = coords[i]^k mod p for 0 <= k <= d."""
    m = len(coords)
    pows = np.ones((m, d + 1), dtype=np.int64)
    for k in range(1, d + 1):
        pows[:, k] = pows[:, k - 1] * np.asarray(coords, dtype=np.int64) % p
    return pows


def evaluation_row(coords: Sequence[int], n: int, d: int, p: int) -> np.ndarray:
    """Values of every degree-d monomial at the given coordinates."""
    exps = _exponent_array(n, d)
    pows = _power_table(coords, d, p)
    row = np.ones(len(exps), dtype=np.int64)
    for i in range(n + 1):
        row = row * pows[i, exps[:, i]] % p
    return row


def partial_rows(coords: Sequence[int], n: int, d: int, p: int) -> np.ndarray:
    """(n+1) x N block of all first partials of the monomials at a point."""
    exps = _exponent_array(n, d)
    pows = _power_table(coords, d, p)
    out = np.zeros((n + 1, len(exps)), dtype=np.int64)
    for j in range(n + 1):
        row = exps[:, j] % p
        for i in range(n + 1):
            e = exps[:, i] - (1 if i == j else 0)
            e = np.maximum(e, 0)  # rows with e_j = 0 are already zeroed by the factor
            row = row * pows[i, e] % p
        out[j] = row
    return out


def evaluate_with_gradient(
    h: Hypersurface, pt: Point
) -> tuple[int, tuple[int, ...]]:
    """Exact value h(pt) and all n+1 first partials at pt."""
    if h.n != pt.n:
        raise ValueError("ambient dimensions do not match")
    p = h.p
    value = dot_mod(evaluation_row(pt.coords, h.n, h.degree, p), h.coeffs, p)
    grads = partial_rows(pt.coords, h.n, h.degree, p)
    gradient = tuple(dot_mod(g, h.coeffs, p) for g in grads)
    return value, gradient


def directional_derivative(h: Hypersurface, pt: Point, vec: Sequence[int]) -> int:
    """D_v h(pt) for a direction given by raw coordinates."""
    _, grad = evaluate_with_gradient(h, pt)
    return int(sum(int(v) * g for v, g in zip(vec, grad)) % h.p)


def coordinate_matrix(points: Sequence[Point], p: int | None = None) -> Matrix:
    if not points:
        raise EmptyInput("need at least one point")
    mod = p if p is not None else points[0].p
    if any(pt.p != mod for pt in points):
        raise ValueError("points live over different primes")
    a = np.asarray([pt.coords for pt in points], dtype=np.int64)
    return Matrix(a.shape[0], a.shape[1], mod, a)


def span_dim(points: Sequence[Point]) -> int:
    """Projective dimension of the linear span of the points."""
    return rank(coordinate_matrix(points)) - 1


def hyperplanes_through(points: Sequence[Point]) -> list[tuple[int, ...]]:
    """Coefficient vectors of a basis of hyperplanes containing the points."""
    from .linalg import right_kernel

    return list(right_kernel(coordinate_matrix(points)))


def forms_through(points: Sequence[Point], degree: int) -> list[Hypersurface]:
    """Basis of degree-t forms vanishing at all the given points."""
    from .linalg import Matrix as _M, right_kernel

    if not points:
        raise EmptyInput("need at least one point")
    p = points[0].p
    n = points[0].n
    rows = np.vstack(
        [evaluation_row(q.coords, n, degree, p) for q in points]
    )
    m = _M(rows.shape[0], rows.shape[1], p, rows)
    return [Hypersurface(n, degree, v, p) for v in right_kernel(m)]


def random_transform(n: int, p: int, rng) -> np.ndarray:
    """Seeded invertible (n+1)x(n+1) change of coordinates."""
    while True:
        a = np.asarray(
            [[rng.field(p) for _ in range(n + 1)] for _ in range(n + 1)],
            dtype=np.int64,
        )
        if rank(Matrix(n + 1, n + 1, p, a)) == n + 1:
            return a


def apply_transform(a: np.ndarray, coords: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple(int(x) for x in matvec_mod(a, coords, p))


def invert_transform(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    work = np.concatenate([a.copy() % p, np.eye(n, dtype=np.int64)], axis=1)
    from .linalg import _forward_eliminate

    r = _forward_eliminate(work, n, p)
    if r != n:
        raise ValueError("transform is singular")
    # Back-substitute to clear above the diagonal.
    for c in range(n - 1, 0, -1):
        above = np.nonzero(work[:c, c])[0]
        if above.size:
            work[above] = (work[above] - np.outer(work[above, c], work[c])) % p
    return work[:, n:]
