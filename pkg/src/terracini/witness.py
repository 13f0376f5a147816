"""Witness curves explaining why a scheme has dependent conditions.

For a zero-dimensional scheme z in the plane or in 3-space with small
degree and h1(I_z(d)) > 0, the dependence is always carried by a curve of
degree at most 3:

  * a line meeting z in degree >= d+2,
  * a conic meeting z in degree >= 2d+2, or
  * a coplanar part of degree exactly 3d lying on a plane cubic with
    in-plane dependence (the complete-intersection case; this module
    checks the Hilbert-style surrogate: coplanar, degree 3d, contained in
    a cubic, in-plane h1 positive).

Candidate lines are the spans of support pairs and the jet tangent lines;
for schemes whose components have degree <= 2 this list is exhaustive,
since a line meeting such a scheme in degree >= 2 either contains two
support points or contains a jet.  Candidate conics come from kernels of
five evaluation conditions: a conic absorbing 2d+2 >= 12 of the degree
must pass through at least d+1 >= 5 support points, so enumerating
support 5-subsets (refined by extra rows when the kernel is not unique)
reaches every witness conic at desk scale.

A scheme satisfying the classification preconditions that fails all three
searches raises ClassificationIncomplete with a re-checkable payload:
either a counterexample to the trichotomy or a bad-prime artifact, and
worth a multi-prime re-run before celebrating.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .cohomology import cohomology, condition_rows, restrict_scheme
from .linalg import Matrix, rank, right_kernel
from .projective import (
    Hypersurface,
    Point,
    coordinate_matrix,
    evaluation_row,
    hyperplanes_through,
    monomial_count,
)
from .schemes import (
    JET,
    ZeroDimScheme,
    intersection_degree_hypersurface,
    intersection_degree_line,
    scheme_to_json,
)

LINE = "line"
CONIC = "conic"
PLANE_CUBIC_CANDIDATE = "plane_cubic_candidate"

DEFAULT_CONIC_BUDGET = 20000


class ClassificationIncomplete(RuntimeError):
    """No witness curve found for a scheme satisfying the preconditions.

    Carries the scheme so the case can be re-checked offline (and with
    other primes: a rank drop at a bad prime can fake h1 > 0).
    """

    def __init__(self, message: str, z: ZeroDimScheme, d: int):
        super().__init__(message)
        self.scheme = z
        self.d = d

    def payload(self) -> dict:
        return {"reason": str(self), "d": self.d, "scheme": scheme_to_json(self.scheme)}


class ConicBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Witness:
    """A curve witnessing the dependence, with re-checkable defining data."""

    kind: str
    achieved: int
    threshold: int
    line: tuple[Point, Point] | None = None
    plane: tuple[int, ...] | None = None
    curve_coeffs: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out: dict = {
            "kind": self.kind,
            "achieved": self.achieved,
            "threshold": self.threshold,
        }
        if self.line is not None:
            out["line"] = [list(q.coords) for q in self.line]
        if self.plane is not None:
            out["plane"] = list(self.plane)
        if self.curve_coeffs is not None:
            out["curve_coeffs"] = list(self.curve_coeffs)
        return out


def _anchor_points(z: ZeroDimScheme) -> list[Point]:
    """Support points plus the second points of jet tangent lines."""
    anchors = list(z.support)
    for comp in z.components:
        if comp.kind == JET:
            anchors.append(Point(comp.direction.coords, comp.base.p))
    return anchors


def _line_key(a: Point, b: Point) -> tuple:
    m = coordinate_matrix([a, b])
    work = m.entries.copy()
    from .linalg import _forward_eliminate

    _forward_eliminate(work, m.cols, m.p)
    return tuple(tuple(int(x) for x in row) for row in work)


def candidate_lines(z: ZeroDimScheme) -> list[tuple[Point, Point]]:
    """Support pairs and jet tangent lines, deduplicated."""
    pairs: list[tuple[Point, Point]] = []
    for a, b in combinations(z.support, 2):
        pairs.append((a, b))
    for comp in z.components:
        if comp.kind == JET:
            pairs.append(
                (comp.base, Point(comp.direction.coords, comp.base.p))
            )
    seen = set()
    out = []
    for a, b in pairs:
        key = _line_key(a, b)
        if key not in seen:
            seen.add(key)
            out.append((a, b))
    return out


def find_line_witness(z: ZeroDimScheme, d: int) -> Witness | None:
    """Best line against the d+2 threshold, or None."""
    best: Witness | None = None
    for a, b in candidate_lines(z):
        deg = intersection_degree_line(z, a, b)
        if best is None or deg > best.achieved:
            best = Witness(
                kind=LINE, achieved=deg, threshold=d + 2, line=(a, b)
            )
    if best is not None and best.achieved >= d + 2:
        return best
    return None


def _candidate_planes(z: ZeroDimScheme) -> list[tuple[int, ...]]:
    anchors = _anchor_points(z)
    seen = set()
    out = []
    for triple in combinations(anchors, 3):
        cuts = hyperplanes_through(list(triple))
        if len(cuts) != 1:
            continue  # degenerate triple spans a line or less
        h = cuts[0]
        if h not in seen:
            seen.add(h)
            out.append(h)
    return out


def _conic_candidates_in_plane(
    zm: ZeroDimScheme, budget: int
) -> Iterable[Hypersurface]:
    """Conics through 5-element condition subsets of the restricted scheme."""
    p = zm.p
    support = list(zm.support)
    rows = {q: evaluation_row(q.coords, 2, 2, p) for q in support}
    if len(support) >= 5:
        total = 0
        for sub in combinations(support, 5):
            total += 1
            if total > budget:
                raise ConicBudgetExceeded(
                    f"conic enumeration exceeded the budget of {budget} subsets"
                )
            block = np.vstack([rows[q] for q in sub])
            extras = [q for q in support if q not in sub]
            while True:
                kern = right_kernel(Matrix(block.shape[0], 6, p, block))
                if len(kern) <= 1 or not extras:
                    break
                block = np.vstack([block, rows[extras.pop(0)]])
            for vec in kern:
                yield Hypersurface(2, 2, vec, p)
    else:
        m = condition_rows(zm, 2)
        kern = right_kernel(m)
        for vec in kern:
            yield Hypersurface(2, 2, vec, p)


def find_conic_witness(
    z: ZeroDimScheme, d: int, budget: int = DEFAULT_CONIC_BUDGET
) -> Witness | None:
    """Best conic against the 2d+2 threshold, or None.

    An exhausted enumeration budget raises ConicBudgetExceeded rather than
    silently truncating the search.
    """
    if z.n not in (2, 3):
        raise ValueError("conic witnesses live in the plane or in 3-space")
    threshold = 2 * d + 2
    best: Witness | None = None
    if z.n == 2:
        planes: list[tuple[int, ...] | None] = [None]
    else:
        planes = list(_candidate_planes(z))
    for h in planes:
        if h is None:
            zm = z
        else:
            zm = restrict_scheme(z, h)
        if zm.degree < threshold or len(zm.support) < 5:
            continue
        for conic in _conic_candidates_in_plane(zm, budget):
            deg = intersection_degree_hypersurface(zm, conic)
            if best is None or deg > best.achieved:
                best = Witness(
                    kind=CONIC,
                    achieved=deg,
                    threshold=threshold,
                    plane=h,
                    curve_coeffs=conic.coeffs,
                )
    if best is not None and best.achieved >= threshold:
        return best
    return None


def _plane_cubic_candidate(z: ZeroDimScheme, d: int) -> Witness | None:
    if z.n == 2:
        planes: list[tuple[int, ...] | None] = [None]
    else:
        planes = list(_candidate_planes(z))
    for h in planes:
        zm = z if h is None else restrict_scheme(z, h)
        if zm.degree != 3 * d:
            continue
        if not zm.components:
            continue
        kern = right_kernel(condition_rows(zm, 3))
        if not kern:
            continue
        if cohomology(zm, d).h1 <= 0:
            continue
        return Witness(
            kind=PLANE_CUBIC_CANDIDATE,
            achieved=3 * d,
            threshold=3 * d,
            plane=h,
            curve_coeffs=kern[0],
        )
    return None


def scheme_span_dim(z: ZeroDimScheme) -> int:
    """Projective dimension of the linear span of a scheme with
    components of degree <= 2."""
    return rank(coordinate_matrix(_anchor_points(z))) - 1


def classify(
    z: ZeroDimScheme, d: int, budget: int = DEFAULT_CONIC_BUDGET
) -> Witness:
    """Line, else conic, else plane-cubic candidate; anything else raises.

    Preconditions checked: components of degree <= 2 and h1 > 0 always;
    in 3-space deg(z) <= 3d+1 and a spanning scheme; in the plane
    deg(z) <= 3d and d maximal with h1 > 0.
    """
    if z.n not in (2, 3):
        raise ValueError("classification covers the plane and 3-space only")
    if any(c.degree(z.n) > 2 for c in z.components):
        raise ValueError("classification needs components of degree <= 2")
    if cohomology(z, d).h1 <= 0:
        raise ValueError("nothing to classify: conditions are independent")
    if z.n == 3:
        if z.degree > 3 * d + 1:
            raise ValueError("scheme degree exceeds 3d+1")
        if scheme_span_dim(z) != 3:
            raise ValueError("scheme must span 3-space")
    else:
        if z.degree > 3 * d:
            raise ValueError("scheme degree exceeds 3d")
        if cohomology(z, d + 1).h1 != 0:
            raise ValueError("twist is not maximal with h1 > 0")

    line = find_line_witness(z, d)
    if line is not None:
        return line
    try:
        conic = find_conic_witness(z, d, budget=budget)
    except ConicBudgetExceeded as exc:
        raise ClassificationIncomplete(
            f"conic search budget exhausted: {exc}", z, d
        ) from exc
    if conic is not None:
        return conic
    cubic = _plane_cubic_candidate(z, d)
    if cubic is not None:
        return cubic
    raise ClassificationIncomplete(
        "no line, conic or plane-cubic witness found; re-run with other primes "
        "before treating this as a counterexample",
        z,
        d,
    )


def witness_to_json_str(w: Witness) -> str:
    return json.dumps(w.to_json(), sort_keys=True)
