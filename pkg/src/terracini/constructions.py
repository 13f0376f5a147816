"""Seeded generators for the structured point-set families.

Each generator is a pure function of (parameters, seed, prime).  "General"
coordinates are sampled directly in F_p; coincidences mod p are handled by
re-sampling with an incremented sub-seed, and the number of retries is
recorded on the returned curve spec so reports keep the trail.

Families:

  * rational normal curves (the smooth conic of the plane included);
  * reducible rational normal curves: chains of rational normal segments
    in complementary coordinate blocks, consecutive segments meeting in
    one node;
  * smooth plane cubics in Weierstrass form, with a chord construction
    that produces complete intersections with unions of lines (so the
    sampled divisor lies in the system cut by degree d/2 curves);
  * smooth quadric-intersection space curves of genus 1, sampled along
    the rulings of a fixed quadric so that every intersection point with
    a union of d/2 ruling planes is rational;
  * the hyperplane-union configurations witnessing non-empty Terracini
    loci at the minimal cardinality.

All families are returned in seeded generic coordinates (a random
projective change is applied to the standard models).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Sequence

import numpy as np

from .linalg import (
    DEFAULT_PRIME,
    Matrix,
    inv_mod,
    matvec_mod,
    rank,
    sqrt_mod,
)
from .projective import (
    Point,
    apply_transform,
    invert_transform,
    random_transform,
)
from .rng import Rng, derive_seed

RNC = "rnc"
REDUCIBLE_RNC = "reducible_rnc"
SMOOTH_CONIC = "smooth_conic"
PLANE_CUBIC = "plane_cubic"
ELLIPTIC_QUARTIC = "elliptic_quartic"

_MAX_ATTEMPTS = 64


class ParameterOutOfTheoremRange(ValueError):
    pass


class SingularSamplingRequestedButImpossible(ValueError):
    pass


class SmoothnessCertificationFailed(RuntimeError):
    pass


class TransversalityFailed(RuntimeError):
    pass


def _chain_offsets(chain: Sequence[int]) -> list[int]:
    offsets = [0]
    for deg in chain:
        offsets.append(offsets[-1] + deg)
    return offsets


def _moment_point(t: int, degree: int, p: int) -> list[int]:
    out = [1]
    for _ in range(degree):
        out.append(out[-1] * t % p)
    return out


def _on_moment_curve(coords: Sequence[int], p: int) -> bool:
    y = [int(c) % p for c in coords]
    if y[0] != 0:
        scale = inv_mod(y[0], p)
        y = [c * scale % p for c in y]
        t = y[1]
        return all(y[i] == pow(t, i, p) for i in range(len(y)))
    return all(c == 0 for c in y[:-1]) and y[-1] != 0


def _on_segment(coords: Sequence[int], degree: int, offset: int, p: int) -> bool:
    y = [int(c) % p for c in coords]
    block = y[offset : offset + degree + 1]
    outside = y[:offset] + y[offset + degree + 1 :]
    if any(outside):
        return False
    return _on_moment_curve(block, p)


@dataclass(frozen=True)
class CurveSpec:
    """A generated curve: kind, ambient dimension, the projective change
    of coordinates applied to the standard model, and model parameters."""

    kind: str
    n: int
    p: int
    transform: tuple[tuple[int, ...], ...]
    data: dict

    def _standard_coords(self, pt: Point) -> tuple[int, ...]:
        a = np.asarray(self.transform, dtype=np.int64)
        inv = invert_transform(a, self.p)
        return apply_transform(inv, pt.coords, self.p)

    def contains(self, pt: Point) -> bool:
        y = self._standard_coords(pt)
        p = self.p
        if self.kind in (RNC, SMOOTH_CONIC):
            return _on_moment_curve(y, p)
        if self.kind == REDUCIBLE_RNC:
            chain = self.data["chain"]
            offsets = _chain_offsets(chain)
            return any(
                _on_segment(y, chain[i], offsets[i], p) for i in range(len(chain))
            )
        if self.kind == PLANE_CUBIC:
            a, b = self.data["a"], self.data["b"]
            x, yy, z = (int(c) % p for c in y)
            lhs = yy * yy % p * z % p
            rhs = (pow(x, 3, p) + a * x % p * z % p * z + b * pow(z, 3, p)) % p
            return lhs == rhs % p
        if self.kind == ELLIPTIC_QUARTIC:
            m0 = _segre_matrix(p)
            m1 = np.asarray(self.data["second_quadric"], dtype=np.int64)
            return _qform(m0, y, p) == 0 and _qform(m1, y, p) == 0
        raise ValueError(f"unknown curve kind {self.kind!r}")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "prime": self.p,
            "transform": [list(r) for r in self.transform],
            "data": {
                k: (
                    [list(r) for r in v]
                    if isinstance(v, tuple) and v and isinstance(v[0], tuple)
                    else (list(v) if isinstance(v, tuple) else v)
                )
                for k, v in self.data.items()
            },
        }


# --- rational normal curves ----------------------------------------------


def rnc_points(
    n: int, x: int, seed: int, prime: int = DEFAULT_PRIME
) -> tuple[CurveSpec, list[Point]]:
    """x distinct points on a seeded-generic rational normal curve of P^n."""
    if x < 1 or n < 1:
        raise ValueError("need n >= 1 and x >= 1")
    rng = Rng(derive_seed(seed, "rnc", n, x))
    a = random_transform(n, prime, rng)
    params = rng.distinct(prime, x)
    pts = [
        Point(apply_transform(a, _moment_point(t, n, prime), prime), prime)
        for t in params
    ]
    kind = SMOOTH_CONIC if n == 2 else RNC
    spec = CurveSpec(
        kind=kind,
        n=n,
        p=prime,
        transform=tuple(tuple(int(v) for v in row) for row in a),
        data={"params": tuple(params), "retries": 0},
    )
    return spec, pts


# --- reducible rational normal curves -------------------------------------


def reducible_rnc_points(
    chain: Sequence[int],
    allocation: Sequence[int],
    seed: int,
    prime: int = DEFAULT_PRIME,
    include_nodes: Sequence[int] = (),
) -> tuple[CurveSpec, list[Point], list[bool]]:
    """Points on a chain of rational normal segments.

    chain lists the segment degrees (sum = ambient n); allocation lists
    how many smooth points to sample on each segment.  include_nodes adds
    the numbered nodes (1-based, node i joins segments i and i+1) as
    sample points; those are flagged non-smooth in the returned mask.
    """
    chain = tuple(int(c) for c in chain)
    if len(chain) < 2 or any(c < 1 for c in chain):
        raise ValueError("chain needs at least two segments of degree >= 1")
    if len(allocation) != len(chain):
        raise ValueError("allocation must match the chain length")
    for node in include_nodes:
        if not 1 <= node <= len(chain) - 1:
            raise SingularSamplingRequestedButImpossible(
                f"node {node} does not exist on a {len(chain)}-segment chain"
            )
    n = sum(chain)
    rng = Rng(derive_seed(seed, "red-rnc", chain, tuple(allocation)))
    a = random_transform(n, prime, rng)
    offsets = _chain_offsets(chain)
    pts: list[Point] = []
    flags: list[bool] = []
    for i, (deg, count) in enumerate(zip(chain, allocation)):
        # Finite nonzero parameters avoid both endpoints; the left endpoint
        # of the first segment is a smooth free end, so t = 0 is allowed.
        avoid = set() if i == 0 else {0}
        params = rng.distinct(prime, count, avoid=avoid)
        for t in params:
            local = _moment_point(t, deg, prime)
            coords = [0] * (n + 1)
            for j, v in enumerate(local):
                coords[offsets[i] + j] = v
            pts.append(Point(apply_transform(a, coords, prime), prime))
            flags.append(True)
    for node in include_nodes:
        coords = [0] * (n + 1)
        coords[offsets[node]] = 1
        pts.append(Point(apply_transform(a, coords, prime), prime))
        flags.append(False)
    if len(set(pts)) != len(pts):
        raise ValueError("segment samples collided; use another seed")
    spec = CurveSpec(
        kind=REDUCIBLE_RNC,
        n=n,
        p=prime,
        transform=tuple(tuple(int(v) for v in row) for row in a),
        data={
            "chain": chain,
            "allocation": tuple(int(c) for c in allocation),
            "nodes_included": tuple(int(v) for v in include_nodes),
            "retries": 0,
        },
    )
    return spec, pts, flags


def reducible_rnc_necessary_conditions(
    spec: CurveSpec, allocation: Sequence[int], flags: Sequence[bool], d: int
) -> dict[str, bool]:
    """The structural conditions a minimally Terracini member supported on
    a chain must satisfy: smooth-locus support, even ambient dimension,
    odd twist, and each final segment carrying (segment degree * d + 1)/2
    points."""
    chain = spec.data["chain"]
    finals = {0, len(chain) - 1}
    out = {
        "support_in_smooth_locus": all(flags),
        "ambient_dimension_even": spec.n % 2 == 0,
        "twist_odd": d % 2 == 1,
    }
    ok = True
    for i in sorted(finals):
        ni, xi = chain[i], allocation[i]
        if ni % 2 == 0 or 2 * xi != ni * d + 1:
            ok = False
    out["final_segments_balanced"] = ok
    return out


# --- smooth plane cubics ---------------------------------------------------


def _cubic_rational_point(a: int, b: int, rng: Rng, p: int) -> tuple[int, int]:
    """(x, y) with y^2 = x^3 + a x + b, by sampling x until a square."""
    while True:
        x = rng.field(p)
        rhs = (pow(x, 3, p) + a * x + b) % p
        y = sqrt_mod(rhs, p)
        if y is None:
            continue
        return x, y


def _chord_third_point(
    p1: tuple[int, int], p2: tuple[int, int], a: int, p: int
) -> tuple[int, int] | None:
    """Third intersection of the chord through two affine curve points;
    None when the chord is vertical or tangent at one of them."""
    (x1, y1), (x2, y2) = p1, p2
    if x1 == x2:
        return None
    lam = (y2 - y1) * inv_mod(x2 - x1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    y3 = (y1 + lam * (x3 - x1)) % p
    if (x3, y3) in (p1, p2):
        return None
    return x3, y3


COMPLETE_INTERSECTION = "complete_intersection_even_d"
FREE_POINTS = "free_points_odd_d"


def plane_cubic_points(
    d: int,
    mode: str,
    seed: int,
    prime: int = DEFAULT_PRIME,
    count: int | None = None,
) -> tuple[CurveSpec, list[Point]]:
    """Points on a seeded smooth plane cubic.

    complete_intersection_even_d: d = 2k even, x = 3k points cut out by a
    union of k chords, so the sampled divisor is a complete intersection
    with a degree-k curve.  free_points_odd_d: d odd, x = (3d+1)/2 points
    with no divisor-class constraint.  count overrides x for sub-threshold
    sampling experiments.
    """
    if mode == COMPLETE_INTERSECTION:
        if d < 6 or d % 2:
            raise ParameterOutOfTheoremRange("need even d >= 6")
    elif mode == FREE_POINTS:
        if d < 7 or d % 2 == 0:
            raise ParameterOutOfTheoremRange("need odd d >= 7")
    else:
        raise ValueError(f"unknown mode {mode!r}")

    for attempt in range(_MAX_ATTEMPTS):
        rng = Rng(derive_seed(seed, "cubic", d, mode, attempt))
        a = rng.field(prime)
        b = rng.field(prime)
        if (4 * pow(a, 3, prime) + 27 * b * b) % prime == 0:
            continue
        affine: list[tuple[int, int]] = []
        ok = True
        if mode == COMPLETE_INTERSECTION and count is None:
            k = d // 2
            chords = 0
            guard = 0
            while chords < k and guard < 400:
                guard += 1
                p1 = _cubic_rational_point(a, b, rng, prime)
                p2 = _cubic_rational_point(a, b, rng, prime)
                third = _chord_third_point(p1, p2, a, prime)
                if third is None:
                    continue
                triple = [p1, p2, third]
                if len(set(triple)) != 3 or any(q in affine for q in triple):
                    continue
                affine.extend(triple)
                chords += 1
            ok = chords == k
        else:
            x = count if count is not None else (3 * d + 1) // 2
            guard = 0
            while len(affine) < x and guard < 40 * x + 400:
                guard += 1
                q = _cubic_rational_point(a, b, rng, prime)
                if q not in affine:
                    affine.append(q)
            ok = len(affine) == x
        if not ok:
            continue
        trans = random_transform(2, prime, rng)
        pts = [
            Point(apply_transform(trans, (x, y, 1), prime), prime)
            for x, y in affine
        ]
        if len(set(pts)) != len(pts):
            continue
        spec = CurveSpec(
            kind=PLANE_CUBIC,
            n=2,
            p=prime,
            transform=tuple(tuple(int(v) for v in row) for row in trans),
            data={
                "a": a,
                "b": b,
                "mode": mode,
                "in_system": mode == COMPLETE_INTERSECTION and count is None,
                "retries": attempt,
            },
        )
        return spec, pts
    raise TransversalityFailed("could not sample the plane cubic configuration")


# --- elliptic quartics (smooth intersections of two quadrics) -------------


def _segre_matrix(p: int) -> np.ndarray:
    """Symmetric matrix of x0 x3 - x1 x2."""
    h = inv_mod(2, p)
    m = np.zeros((4, 4), dtype=np.int64)
    m[0, 3] = m[3, 0] = h
    m[1, 2] = m[2, 1] = (p - h) % p
    return m


def _qform(m: np.ndarray, v: Sequence[int], p: int) -> int:
    mv = matvec_mod(m, v, p)
    return sum(int(a) * int(b) for a, b in zip(v, mv)) % p


def _ruling_one(u: int, p: int) -> tuple[list[int], list[int]]:
    return [1, 0, u, 0], [0, 1, 0, u]

def _ruling_two(v: int, p: int) -> tuple[list[int], list[int]]:
    return [1, v, 0, 0], [0, 0, 1, v]


def _roots_on_line(
    m: np.ndarray, p0: Sequence[int], p1: Sequence[int], p: int
) -> list[tuple[int, ...]] | None:
    """Rational points of {q = 0} on the line spanned by p0, p1.

    Returns None when the restricted form vanishes identically (the line
    lies inside the quadric) and [] when the roots are irrational or the
    intersection is tangential (we only keep transversal, distinct pairs).
    """
    a = _qform(m, p0, p)
    c = _qform(m, p1, p)
    both = [(x + y) % p for x, y in zip(p0, p1)]
    b = (_qform(m, both, p) - a - c) % p * inv_mod(2, p) % p
    if a == 0 and b == 0 and c == 0:
        return None
    pts = []
    if a == 0:
        # [1:0] is a root; the residual root is [c : -2b] when defined.
        pts.append(tuple(p0))
        if b != 0:
            s, t = c % p, (-2 * b) % p
            pts.append(tuple((s * x + t * y) % p for x, y in zip(p0, p1)))
    else:
        disc = (b * b - a * c) % p
        r = sqrt_mod(disc, p)
        if r is None or r == 0:
            return []
        for root in ((-b + r) % p, (-b - r) % p):
            s = root * inv_mod(a, p) % p
            pts.append(tuple((s * x + y) % p for x, y in zip(p0, p1)))
    uniq = []
    for q in pts:
        if q not in uniq:
            uniq.append(q)
    return uniq if len(uniq) == 2 else []


def _certify_smooth(m1: np.ndarray, coords: Sequence[int], p: int) -> bool:
    g0 = matvec_mod(_segre_matrix(p), coords, p)
    g1 = matvec_mod(m1, coords, p)
    jac = Matrix(2, 4, p, np.vstack([g0, g1]))
    return rank(jac) == 2


def elliptic_quartic_points(
    d: int, seed: int, prime: int = DEFAULT_PRIME, count: int | None = None
) -> tuple[CurveSpec, list[Point]]:
    """2d rational points cut out on a smooth quadric-intersection curve
    by a union of d/2 ruling planes (so the doubled divisor lies in the
    degree-d system of the curve); count overrides the size with free
    points carrying no class constraint.
    """
    if count is None and (d < 6 or d % 2):
        raise ParameterOutOfTheoremRange("need even d >= 6")
    qmat = _segre_matrix(prime)
    for attempt in range(_MAX_ATTEMPTS):
        rng = Rng(derive_seed(seed, "elliptic", d, count, attempt))
        m1 = np.zeros((4, 4), dtype=np.int64)
        for i in range(4):
            for j in range(i, 4):
                v = rng.field(prime)
                m1[i, j] = v
                m1[j, i] = v
        raw: list[tuple[int, ...]] = []
        ok = True
        if count is None:
            planes = 0
            guard = 0
            while planes < d // 2 and guard < 600:
                guard += 1
                u, v = rng.field(prime), rng.field(prime)
                node = (1, v, u, u * v % prime)
                if _qform(m1, node, prime) == 0:
                    continue
                r1 = _roots_on_line(m1, *_ruling_one(u, prime), prime)
                r2 = _roots_on_line(m1, *_ruling_two(v, prime), prime)
                if r1 is None or r2 is None:
                    ok = False  # a ruling line inside the curve: resample
                    break
                quartet = (r1 or []) + (r2 or [])
                if len(quartet) != 4:
                    continue
                normalized = [Point(q, prime) for q in quartet]
                if len(set(normalized)) != 4 or any(
                    q in raw for q in quartet
                ):
                    continue
                raw.extend(quartet)
                planes += 1
            ok = ok and planes == d // 2
        else:
            guard = 0
            seen: set[Point] = set()
            while len(raw) < count and guard < 80 * count + 800:
                guard += 1
                u = rng.field(prime)
                r1 = _roots_on_line(m1, *_ruling_one(u, prime), prime)
                if not r1:
                    continue
                for q in r1:
                    key = Point(q, prime)
                    if key not in seen and len(raw) < count:
                        seen.add(key)
                        raw.append(q)
            ok = len(raw) == count
        if not ok:
            continue
        if not all(_certify_smooth(m1, q, prime) for q in raw):
            continue
        trans = random_transform(3, prime, rng)
        pts = [Point(apply_transform(trans, q, prime), prime) for q in raw]
        if len(set(pts)) != len(pts):
            continue
        spec = CurveSpec(
            kind=ELLIPTIC_QUARTIC,
            n=3,
            p=prime,
            transform=tuple(tuple(int(v) for v in row) for row in trans),
            data={
                "second_quadric": tuple(
                    tuple(int(v) for v in row) for row in m1
                ),
                "in_system": count is None,
                "retries": attempt,
            },
        )
        return spec, pts
    raise SmoothnessCertificationFailed(
        "could not certify a smooth quadric intersection with rational points"
    )


# --- hyperplane-union members at the minimal cardinality -------------------


def _general_in_subspace(free: Sequence[int], n: int, rng: Rng, p: int) -> Point:
    """Random point whose coordinates vanish outside the free index set."""
    coords = [0] * (n + 1)
    for i in free:
        coords[i] = rng.field(p)
    if not any(coords):
        coords[free[0]] = 1
    return Point(tuple(coords), p)


def ai0_witness(
    n: int, d: int, x: int, seed: int, prime: int = DEFAULT_PRIME
) -> list[Point]:
    """The hyperplane-union configuration of x points that is Terracini
    for twist d, at any cardinality x >= n + ceil(d/2).

    Shape: most points sit on a line inside a hyperplane H (their doubles
    depend already on the line), padding points make the span all of P^n,
    and the last point is a crossing point of two other hyperplanes, so
    the union (d-2)H + K + U passes doubly through everything.
    """
    if n < 2 or d < 3 or (n, d) == (2, 3):
        raise ParameterOutOfTheoremRange("no Terracini sets in this range")
    if x < n + ceil(d / 2):
        raise ParameterOutOfTheoremRange(
            f"need x >= {n + ceil(d / 2)} points for n={n}, d={d}"
        )
    from .membership import is_terracini

    for attempt in range(_MAX_ATTEMPTS):
        rng = Rng(derive_seed(seed, "ai0", n, d, x, attempt))
        pts: list[Point] = []
        if n == 2:
            # x - 1 points on the line x2 = 0, plus the crossing x0 = x1 = 0.
            for t in rng.distinct(prime, x - 1, avoid={0}):
                pts.append(Point((1, t, 0), prime))
            pts.append(Point((0, 0, 1), prime))
        elif d == 3:
            # n + 1 points alternating between two codimension-2 walls of H,
            # plus one point on the opposite crossing; extras rejoin the walls.
            for k in range(x - 1):
                if k % 2 == 0:
                    pts.append(
                        _general_in_subspace(range(2, n + 1), n, rng, prime)
                    )
                else:
                    free = [1] + list(range(3, n + 1))
                    pts.append(_general_in_subspace(free, n, rng, prime))
            coords = [0] * (n + 1)
            coords[0] = 1
            for i in range(3, n + 1):
                coords[i] = rng.field(prime)
            pts.append(Point(tuple(coords), prime))
        else:
            # E: x-n+1 points on the line spanned by e1 and (0,0,1,...,1).
            for t in rng.distinct(prime, x - n + 1, avoid={0}):
                coords = [0, 1] + [t] * (n - 1)
                pts.append(Point(tuple(coords), prime))
            for _ in range(n - 2):
                pts.append(_general_in_subspace(range(1, n + 1), n, rng, prime))
            coords = [1, 0, 0] + [rng.field(prime) for _ in range(n - 2)]
            pts.append(Point(tuple(coords), prime))
        if len(set(pts)) != len(pts):
            continue
        trans = random_transform(n, prime, rng)
        moved = [Point(apply_transform(trans, q.coords, prime), prime) for q in pts]
        cert = is_terracini(moved, d)
        if cert.terracini:
            return moved
    raise ParameterOutOfTheoremRange(
        f"failed to produce a verified member for (n,d,x)=({n},{d},{x})"
    )


# --- curve-side oracle ------------------------------------------------------


def curve_side_oracle(spec: CurveSpec, x: int, d: int) -> int:
    """Expected curve-side contribution to h1 for 2S restricted to the
    curve: the degree count on a rational curve, or the genus-1 answer
    when the construction placed the divisor in the degree-d system."""
    from .oracles import genus0_h1, genus1_h1

    if spec.kind in (RNC, SMOOTH_CONIC):
        return genus0_h1(spec.n * d - 2 * x)
    if spec.kind == PLANE_CUBIC:
        e = 3 * d - 2 * x
        if e == 0:
            return 1 if spec.data.get("in_system") else 0
        return genus1_h1(e)
    if spec.kind == ELLIPTIC_QUARTIC:
        e = 4 * d - 2 * x
        if e == 0:
            return 1 if spec.data.get("in_system") else 0
        return genus1_h1(e)
    raise ValueError(f"no curve-side oracle for kind {spec.kind!r}")


# --- generic samplers used by searches --------------------------------------


def random_points(
    n: int, count: int, seed: int, prime: int = DEFAULT_PRIME
) -> list[Point]:
    """count distinct uniform points of P^n."""
    rng = Rng(derive_seed(seed, "uniform", n, count))
    pts: list[Point] = []
    seen: set[Point] = set()
    while len(pts) < count:
        q = Point(tuple(rng.field(prime) for _ in range(n + 1)), prime)
        if q not in seen:
            seen.add(q)
            pts.append(q)
    return pts
