"""Zero-dimensional schemes: simple points, curvilinear jets, double points.

A component is one of
  * Simple(p)      - degree 1, one evaluation condition;
  * Jet(p, v)      - degree 2, evaluation plus the derivative along v;
  * Double(p)      - degree n+1, all first partials vanish.

Jets along the Euler direction (v proportional to p) are rejected: by the
Euler relation the derivative condition would be a multiple of evaluation,
so such a "jet" is not a genuine degree-2 subscheme.

Residuals with respect to a hypersurface follow the componentwise ideal
quotient: a component survives where the hypersurface misses it, shrinks
where the hypersurface passes smoothly, and disappears where the
hypersurface is singular enough to absorb it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .projective import (
    Direction,
    Hypersurface,
    Point,
    coordinate_matrix,
    evaluate_with_gradient,
    reduce_mod_point,
    span_dim,
)
from .linalg import Matrix, rank

SIMPLE = "simple"
JET = "jet"
DOUBLE = "double"


class DuplicatePoint(ValueError):
    pass


class DegenerateLine(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    kind: str
    base: Point
    direction: Direction | None = None

    def __post_init__(self):
        if self.kind not in (SIMPLE, JET, DOUBLE):
            raise ValueError(f"unknown component kind {self.kind!r}")
        if self.kind == JET:
            if self.direction is None:
                raise ValueError("a jet needs a direction")
            reduced = reduce_mod_point(self.direction.coords, self.base)
            if reduced is None:
                raise ValueError("jet direction proportional to its base point")
            # Canonical representative modulo the Euler direction.
            object.__setattr__(
                self, "direction", Direction(reduced, self.base.p)
            )
        elif self.direction is not None:
            raise ValueError("only jets carry a direction")

    def degree(self, n: int) -> int:
        if self.kind == SIMPLE:
            return 1
        if self.kind == JET:
            return 2
        return n + 1


def simple(base: Point) -> Component:
    return Component(SIMPLE, base)


def jet(base: Point, direction: Direction | Sequence[int]) -> Component:
    if not isinstance(direction, Direction):
        direction = Direction(tuple(direction), base.p)
    return Component(JET, base, direction)


def double(base: Point) -> Component:
    return Component(DOUBLE, base)


@dataclass(frozen=True)
class ZeroDimScheme:
    """Union of components with pairwise distinct base points."""

    n: int
    components: tuple[Component, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        seen = set()
        for comp in self.components:
            if comp.base.n != self.n:
                raise ValueError("component lives in the wrong ambient space")
            if comp.base in seen:
                raise DuplicatePoint(f"repeated base point {comp.base.coords}")
            seen.add(comp.base)

    @property
    def degree(self) -> int:
        return sum(c.degree(self.n) for c in self.components)

    @property
    def support(self) -> tuple[Point, ...]:
        return tuple(c.base for c in self.components)

    @property
    def p(self) -> int:
        return self.components[0].base.p if self.components else 0

    def without(self, index: int) -> "ZeroDimScheme":
        comps = self.components[:index] + self.components[index + 1 :]
        return ZeroDimScheme(self.n, comps)

    def replace(self, index: int, comp: Component) -> "ZeroDimScheme":
        comps = list(self.components)
        comps[index] = comp
        return ZeroDimScheme(self.n, tuple(comps))


def double_scheme(points: Sequence[Point]) -> ZeroDimScheme:
    """The union of full double points at the given (distinct) points."""
    if not points:
        raise ValueError("need at least one point")
    if len(set(points)) != len(points):
        raise DuplicatePoint("double scheme needs distinct points")
    return ZeroDimScheme(points[0].n, tuple(double(q) for q in points))


def simple_scheme(points: Sequence[Point]) -> ZeroDimScheme:
    if not points:
        raise ValueError("need at least one point")
    if len(set(points)) != len(points):
        raise DuplicatePoint("scheme needs distinct points")
    return ZeroDimScheme(points[0].n, tuple(simple(q) for q in points))


def residual(z: ZeroDimScheme, f: Hypersurface) -> ZeroDimScheme:
    """Componentwise ideal quotient of z by the hypersurface f."""
    if z.components and f.n != z.n:
        raise ValueError("ambient dimensions do not match")
    kept: list[Component] = []
    for comp in z.components:
        value, gradient = evaluate_with_gradient(f, comp.base)
        if value != 0:
            kept.append(comp)
            continue
        if comp.kind == SIMPLE:
            continue
        if comp.kind == JET:
            dv = sum(
                int(v) * g for v, g in zip(comp.direction.coords, gradient)
            ) % f.p
            if dv != 0:
                kept.append(simple(comp.base))
            continue
        # Double point: survives as the reduced point iff f is smooth there.
        if any(gradient):
            kept.append(simple(comp.base))
    return ZeroDimScheme(z.n, tuple(kept))


def _on_line(a: Point, b: Point, q: Point) -> bool:
    return rank(coordinate_matrix([a, b, q])) <= 2


def _direction_in_line(a: Point, b: Point, base: Point, vec: Direction) -> bool:
    m = coordinate_matrix([a, b])
    stacked = np.vstack([m.entries, base.coords, vec.coords])
    return rank(Matrix(4, m.cols, m.p, stacked)) <= 2


def intersection_degree_line(z: ZeroDimScheme, a: Point, b: Point) -> int:
    """Scheme-theoretic degree of z cut with the line through a and b."""
    if a == b:
        raise DegenerateLine("line needs two distinct points")
    total = 0
    for comp in z.components:
        if not _on_line(a, b, comp.base):
            continue
        if comp.kind == SIMPLE:
            total += 1
        elif comp.kind == DOUBLE:
            total += 2
        else:
            if _direction_in_line(a, b, comp.base, comp.direction):
                total += 2
            else:
                total += 1
    return total


def intersection_degree_hypersurface(z: ZeroDimScheme, f: Hypersurface) -> int:
    """deg(z) - deg(residual(z, f)): the degree absorbed by f."""
    return z.degree - residual(z, f).degree


def subscheme_of(w: ZeroDimScheme, z: ZeroDimScheme) -> bool:
    """Componentwise containment test (same base, weakly smaller kind)."""
    by_base = {c.base: c for c in z.components}
    order = {SIMPLE: 0, JET: 1, DOUBLE: 2}
    for comp in w.components:
        host = by_base.get(comp.base)
        if host is None:
            return False
        if order[comp.kind] > order[host.kind]:
            return False
        if comp.kind == JET and host.kind == JET and comp.direction != host.direction:
            return False
    return True


# --- JSON wire format ---------------------------------------------------


def scheme_to_json(z: ZeroDimScheme) -> dict:
    comps = []
    for c in z.components:
        entry: dict = {"kind": c.kind, "point": list(c.base.coords)}
        if c.kind == JET:
            entry["direction"] = list(c.direction.coords)
        comps.append(entry)
    return {"n": z.n, "components": comps}


def scheme_from_json(data: dict, p: int) -> ZeroDimScheme:
    n = int(data["n"])
    comps = []
    for entry in data["components"]:
        base = Point(tuple(int(x) for x in entry["point"]), p)
        kind = entry["kind"]
        if kind == JET:
            comps.append(jet(base, [int(x) for x in entry["direction"]]))
        elif kind == SIMPLE:
            comps.append(simple(base))
        elif kind == DOUBLE:
            comps.append(double(base))
        else:
            raise ValueError(f"unknown component kind {kind!r}")
    return ZeroDimScheme(n, tuple(comps))


def points_to_json(points: Sequence[Point]) -> dict:
    return {
        "n": points[0].n,
        "points": [list(pt.coords) for pt in points],
    }


def points_from_json(data: dict, p: int) -> list[Point]:
    return [Point(tuple(int(x) for x in row), p) for row in data["points"]]
