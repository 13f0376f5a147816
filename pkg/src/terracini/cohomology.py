"""Interpolation matrices and the cohomology numbers of ideal sheaves.

For a zero-dimensional scheme Z and twist d the condition matrix has one
row per condition imposed on degree-d forms (rows) over the frozen
monomial basis (columns).  With N = monomial_count(n, d), r = rank:

    h0 = N - r,    h1 = deg(Z) - r,    h0 - h1 = N - deg(Z).

Left kernels of the condition matrix are certificates of dependent
conditions; the critical-scheme machinery consumes them directly.

Double points contribute their n+1 partial rows and no evaluation row:
the Euler relation sum_i x_i d_i f = d f makes evaluation a combination
of the partials whenever p > d, and the row count then matches the
degree n+1 of a double point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .linalg import (
    DEFAULT_PRIME,
    Matrix,
    RankProfile,
    dot_mod,
    matvec_mod,
    rank,
    rank_and_left_kernel,
)
from .projective import (
    Point,
    evaluation_row,
    monomial_count,
    partial_rows,
)
from .schemes import (
    DOUBLE,
    JET,
    SIMPLE,
    Component,
    ZeroDimScheme,
    jet,
    simple,
    double,
)

SCHEMA_VERSION = 1


def condition_rows(z: ZeroDimScheme, d: int) -> Matrix:
    """Condition matrix of z on degree-d forms; row count equals deg(z)."""
    if d < 1:
        raise ValueError("twist must be at least 1")
    p = z.p or DEFAULT_PRIME
    if p <= d:
        raise ValueError(f"prime {p} must exceed the twist {d}")
    n = z.n
    ncols = monomial_count(n, d)
    blocks: list[np.ndarray] = []
    for comp in z.components:
        coords = comp.base.coords
        if comp.kind == SIMPLE:
            blocks.append(evaluation_row(coords, n, d, p).reshape(1, -1))
        elif comp.kind == JET:
            grads = partial_rows(coords, n, d, p)
            v = np.asarray(comp.direction.coords, dtype=np.int64)
            deriv = np.zeros(ncols, dtype=np.int64)
            for i in range(n + 1):
                deriv = (deriv + int(v[i]) * grads[i]) % p
            blocks.append(
                np.vstack([evaluation_row(coords, n, d, p), deriv])
            )
        else:
            blocks.append(partial_rows(coords, n, d, p))
    if blocks:
        entries = np.vstack(blocks)
    else:
        entries = np.zeros((0, ncols), dtype=np.int64)
    return Matrix(entries.shape[0], ncols, p, entries)


def row_blocks(z: ZeroDimScheme) -> list[tuple[int, int]]:
    """(start, stop) row ranges of each component inside condition_rows."""
    spans = []
    at = 0
    for comp in z.components:
        step = comp.degree(z.n)
        spans.append((at, at + step))
        at += step
    return spans


@dataclass(frozen=True)
class CohomologyReport:
    """The universal certificate: (n, d, degree, rank, h0, h1) plus the
    primes used and whether they disagreed on the rank."""

    n: int
    d: int
    scheme_degree: int
    rank: int
    h0: int
    h1: int
    primes: tuple[int, ...]
    disagree: bool = False
    per_prime_ranks: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        ncols = monomial_count(self.n, self.d)
        if self.h0 != ncols - self.rank or self.h1 != self.scheme_degree - self.rank:
            raise ValueError("inconsistent cohomology report")
        if self.h0 < 0 or self.h1 < 0:
            raise ValueError("negative cohomology dimension")

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "d": self.d,
            "scheme_degree": self.scheme_degree,
            "rank": self.rank,
            "h0": self.h0,
            "h1": self.h1,
            "primes": list(self.primes),
            "disagree": self.disagree,
            "per_prime_ranks": [list(t) for t in self.per_prime_ranks],
        }


def _report(n: int, d: int, deg: int, r: int, primes, per_prime) -> CohomologyReport:
    ncols = monomial_count(n, d)
    ranks = {rr for _, rr in per_prime} if per_prime else {r}
    return CohomologyReport(
        n=n,
        d=d,
        scheme_degree=deg,
        rank=r,
        h0=ncols - r,
        h1=deg - r,
        primes=tuple(primes),
        disagree=len(ranks) > 1,
        per_prime_ranks=tuple(per_prime),
    )


def cohomology(z: ZeroDimScheme, d: int) -> CohomologyReport:
    """h0 and h1 of the ideal sheaf of z twisted by d, over z's prime."""
    m = condition_rows(z, d)
    r = rank(m)
    return _report(z.n, d, z.degree, r, (m.p,), ((m.p, r),))


def cohomology_multi(
    builder: Callable[[int], ZeroDimScheme], d: int, primes: Sequence[int]
) -> CohomologyReport:
    """Cohomology of a scheme recipe rebuilt independently at each prime.

    The rank is the maximum across primes (a drop at one prime is a bad
    specialization); disagreement is flagged, never silently dropped.
    """
    per = []
    n = deg = None
    for p in primes:
        z = builder(p)
        if n is None:
            n, deg = z.n, z.degree
        elif (z.n, z.degree) != (n, deg):
            raise ValueError("recipe changed shape across primes")
        per.append((p, rank(condition_rows(z, d))))
    best = max(r for _, r in per)
    return _report(n, d, deg, best, tuple(primes), tuple(per))


def left_kernel(z: ZeroDimScheme, d: int) -> RankProfile:
    """Rank profile of the condition matrix; kernel vectors certify h1."""
    return rank_and_left_kernel(condition_rows(z, d))


# --- restriction to linear subspaces -------------------------------------


def hyperplane_restriction_map(h: Sequence[int], p: int) -> np.ndarray:
    """Invertible change of coordinates sending {h . x = 0} to {y_last = 0}.

    Deterministic: the last output coordinate is h . x, the others are the
    first standard coordinates that keep the map invertible.
    """
    h = [int(c) % p for c in h]
    n1 = len(h)
    rows: list[list[int]] = []
    for i in range(n1):
        if len(rows) == n1 - 1:
            break
        e = [0] * n1
        e[i] = 1
        test = rows + [e, h]
        m = Matrix(len(test), n1, p, np.asarray(test, dtype=np.int64))
        if rank(m) == len(test):
            rows.append(e)
    if len(rows) != n1 - 1:
        raise ValueError("could not complete hyperplane to a coordinate system")
    rows.append(h)
    return np.asarray(rows, dtype=np.int64)


def restrict_point(a: np.ndarray, pt: Point) -> Point:
    y = matvec_mod(a, pt.coords, pt.p)
    if y[-1] % pt.p != 0:
        raise ValueError("point does not lie on the hyperplane")
    return Point(tuple(int(v) for v in y[:-1]), pt.p)


def restrict_scheme(z: ZeroDimScheme, h: Sequence[int]) -> ZeroDimScheme:
    """The scheme-theoretic intersection z cap {h = 0}, in the coordinates
    of the hyperplane (one ambient dimension lower).

    Simple points survive when they lie on the hyperplane; jets restrict to
    themselves when tangent to it and to their reduction otherwise; double
    points restrict to double points of the hyperplane.
    """
    p = z.p
    a = hyperplane_restriction_map(h, p)
    hvec = [int(c) % p for c in h]
    comps: list[Component] = []
    for comp in z.components:
        if dot_mod(hvec, comp.base.coords, p) != 0:
            continue
        base = restrict_point(a, comp.base)
        if comp.kind == SIMPLE:
            comps.append(simple(base))
        elif comp.kind == DOUBLE:
            comps.append(double(base))
        else:
            v = comp.direction.coords
            if dot_mod(hvec, v, p) == 0:
                y = matvec_mod(a, v, p)
                comps.append(jet(base, [int(t) for t in y[:-1]]))
            else:
                comps.append(simple(base))
    return ZeroDimScheme(z.n - 1, tuple(comps))


def restrict_to_span(z: ZeroDimScheme) -> ZeroDimScheme:
    """Iterated hyperplane restriction of z into its linear span.

    The span includes jet directions, so every component survives whole
    and the degree is preserved.
    """
    from .projective import hyperplanes_through

    current = z
    while True:
        anchors = list(current.support)
        for comp in current.components:
            if comp.kind == JET:
                anchors.append(Point(comp.direction.coords, comp.base.p))
        cut = hyperplanes_through(anchors)
        if not cut:
            return current
        current = restrict_scheme(current, cut[0])


def report_to_json_str(rep: CohomologyReport) -> str:
    return json.dumps(rep.to_json(), sort_keys=True)
