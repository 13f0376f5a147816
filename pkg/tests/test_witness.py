from __future__ import annotations

import pytest

from terracini.cohomology import cohomology
from terracini.critical import find_critical
from terracini.constructions import (
    COMPLETE_INTERSECTION,
    plane_cubic_points,
    rnc_points,
    random_points,
)
from terracini.linalg import DEFAULT_PRIME, dot_mod
from terracini.membership import is_minimally_terracini
from terracini.projective import Point, apply_transform
from terracini.rng import Rng
from terracini.schemes import (
    ZeroDimScheme,
    double,
    double_scheme,
    intersection_degree_hypersurface,
    intersection_degree_line,
    jet,
    simple,
    simple_scheme,
)
from terracini.witness import (
    CONIC,
    LINE,
    PLANE_CUBIC_CANDIDATE,
    ClassificationIncomplete,
    Witness,
    classify,
    find_conic_witness,
    find_line_witness,
    scheme_span_dim,
)

P = DEFAULT_PRIME


def pt(*coords):
    return Point(tuple(coords), P)


def line_points(count, n=2, seed=1):
    rng = Rng(seed)
    ts = rng.distinct(P, count)
    return [Point((1, t) + (0,) * (n - 1), P) for t in ts]


def general_points(n, count, seed):
    rng = Rng(seed)
    return [Point(tuple(rng.field(P) for _ in range(n + 1)), P) for _ in range(count)]


def test_line_witness_six_collinear_points():
    z = simple_scheme(line_points(6, n=2, seed=2))
    w = find_line_witness(z, 4)
    assert w is not None and w.kind == LINE
    assert w.achieved == 6 and w.threshold == 6


def test_line_witness_three_collinear_double_points():
    z = double_scheme(line_points(3, n=2, seed=3))
    w = find_line_witness(z, 4)
    assert w is not None and w.achieved == 6


def test_line_witness_catches_jet_tangent_lines():
    # One jet plus one simple point on the same line: only the tangent
    # line search sees degree 3.
    base = pt(1, 2, 0)
    z = ZeroDimScheme(2, (jet(base, [0, 1, 0]), simple(pt(1, 5, 0))))
    w = find_line_witness(z, 1)
    assert w is not None and w.achieved == 3


def test_line_witness_none_for_general_position():
    z = simple_scheme(general_points(2, 5, 4))
    assert find_line_witness(z, 4) is None


def test_conic_witness_points_on_smooth_conic():
    _, pts = rnc_points(2, 12, seed=5)
    z = simple_scheme(pts)
    w = find_conic_witness(z, 5)
    assert w is not None and w.kind == CONIC
    assert w.achieved == 12 and w.threshold == 12


def test_conic_witness_double_points_on_conic():
    _, pts = rnc_points(2, 5, seed=6)
    z = double_scheme(pts)
    w = find_conic_witness(z, 4)
    assert w is not None
    assert w.achieved == 10 and w.threshold == 10


def test_conic_witness_none_in_general_position():
    z = simple_scheme(general_points(2, 7, 7))
    assert find_conic_witness(z, 4) is None


def test_witness_soundness_recheck():
    _, pts = rnc_points(2, 12, seed=8)
    z = simple_scheme(pts)
    w = find_conic_witness(z, 5)
    conic = __import__("terracini.projective", fromlist=["Hypersurface"]).Hypersurface(
        2, 2, w.curve_coeffs, P
    )
    assert intersection_degree_hypersurface(z, conic) == w.achieved
    lw = find_line_witness(simple_scheme(line_points(7, seed=9)), 4)
    assert intersection_degree_line(
        simple_scheme(line_points(7, seed=9)), *lw.line
    ) == lw.achieved


def test_classify_critical_scheme_of_plane_quintet():
    pts = general_points(2, 5, 2024)
    crit = find_critical(pts, 4, expect_full_support=True)
    w = classify(crit.scheme, 4)
    assert w.kind == CONIC
    assert w.achieved >= 10


def test_classify_low_degree_always_line():
    # Schemes of degree <= 2d+1 with dependent conditions carry a line.
    for seed in range(5):
        pts = line_points(6, n=2, seed=20 + seed) + general_points(2, 1, 40 + seed)
        z = simple_scheme(pts)
        if cohomology(z, 4).h1 == 0:
            continue
        w = classify(z, 4)
        assert w.kind == LINE


def _tangent_jets_on_cubic(spec, pts):
    """2S cut with the cubic: one jet per point, tangent to the curve."""
    import numpy as np
    from terracini.projective import invert_transform

    p = spec.p
    a_mat = np.asarray(spec.transform, dtype=np.int64)
    inv = invert_transform(a_mat, p)
    a, b = spec.data["a"], spec.data["b"]
    comps = []
    for q in pts:
        x, y, z = apply_transform(inv, q.coords, p)
        # gradient of y^2 z - x^3 - a x z^2 - b z^3
        gx = (-3 * x * x - a * z % p * z) % p
        gy = 2 * y * z % p
        gz = (y * y - 2 * a * x % p * z - 3 * b * z % p * z) % p
        grad = (gx, gy, gz)
        # tangent vector: in the kernel of grad, independent from the point
        candidates = [(0, gz, (p - gy) % p), ((p - gz) % p, 0, gx), (gy, (p - gx) % p, 0)]
        vec = None
        for cand in candidates:
            if not any(cand):
                continue
            assert dot_mod(grad, cand, p) == 0
            try:
                comp = jet(Point(apply_transform(a_mat, (x, y, z), p), p),
                           apply_transform(a_mat, cand, p))
            except ValueError:
                continue
            vec = comp
            break
        assert vec is not None
        comps.append(vec)
    return ZeroDimScheme(2, tuple(comps))


def test_classify_complete_intersection_as_plane_cubic():
    # The doubled complete-intersection divisor on a plane cubic: degree
    # exactly 3d, lies on the cubic, no line or conic clears its bar.
    d = 8
    spec, pts = plane_cubic_points(d, COMPLETE_INTERSECTION, seed=10)
    z = _tangent_jets_on_cubic(spec, pts)
    assert z.degree == 3 * d
    assert cohomology(z, d).h1 == 1
    w = classify(z, d)
    assert w.kind == PLANE_CUBIC_CANDIDATE
    assert w.achieved == 3 * d


def test_classify_plane_cubic_case_in_p3():
    # Embed the 3d-degree cubic scheme in a plane of P^3 and add one point
    # off the plane: span is 3-space, degree 3d+1, still classified.
    d = 8
    spec, pts = plane_cubic_points(d, COMPLETE_INTERSECTION, seed=11)
    z2 = _tangent_jets_on_cubic(spec, pts)
    comps = []
    for comp in z2.components:
        base = Point(comp.base.coords + (0,), P)
        direction = comp.direction.coords + (0,)
        comps.append(jet(base, direction))
    comps.append(simple(pt(1, 2, 3, 5)))
    z3 = ZeroDimScheme(3, tuple(comps))
    assert scheme_span_dim(z3) == 3
    assert z3.degree == 3 * d + 1
    w = classify(z3, d)
    assert w.kind == PLANE_CUBIC_CANDIDATE
    assert w.plane is not None


def test_low_degree_spanning_schemes_pin_line_and_degree():
    # Spanning schemes of degree <= d+n+1 with h1 > 0 exist only at degree
    # exactly d+n+1, and always carry a line of degree >= d+2.
    d = 4
    for n in (2, 3):
        for extra in range(0, 2):
            pts = line_points(d + 2, n=n, seed=60 + extra) + general_points(
                n, n - 1 - extra, 80 + extra
            )
            if len(pts) != d + 2 + n - 1 - extra:
                continue
            z = simple_scheme(pts)
            h1 = cohomology(z, d).h1
            from terracini.projective import span_dim

            if span_dim(pts) != n:
                continue
            if h1 > 0:
                assert z.degree == d + n + 1
                w = find_line_witness(z, d)
                assert w is not None and w.achieved >= d + 2


def test_classify_rejects_bad_preconditions():
    pts = general_points(3, 3, 12)
    z = double_scheme(pts)  # degree-4 components
    with pytest.raises(ValueError):
        classify(z, 4)
    flat = simple_scheme(general_points(2, 4, 13))
    with pytest.raises(ValueError):
        classify(flat, 4)  # h1 = 0


def test_completeness_over_seeded_p3_schemes():
    # A desk-scale version of the classification completeness property:
    # structured schemes in 3-space with dependent conditions are always
    # explained.  The full-size run lives in the verification suites.
    checked = 0
    for seed in range(40):
        rng = Rng(1000 + seed)
        d = 4 + rng.below(3)
        kind = seed % 3
        if kind == 0:
            pts = line_points(d + 2, n=3, seed=seed) + general_points(3, 2, seed)
            z = simple_scheme(pts)
        elif kind == 1:
            _, cpts = rnc_points(2, d + 1, seed=seed)
            emb = [Point(q.coords + (0,), P) for q in cpts]
            z = double_scheme(emb + general_points(3, 1, 300 + seed))
            z = ZeroDimScheme(
                3,
                tuple(
                    jet(c.base, [1, rng.field(P), rng.field(P), rng.field(P)])
                    if c.base.coords[-1] == 0
                    else simple(c.base)
                    for c in z.components
                ),
            )
        else:
            pts = line_points(d + 1, n=3, seed=seed) + line_points(
                d + 1, n=3, seed=777 + seed
            )
            mixed = pts[: d + 1] + [
                Point((t, 1, q.coords[1], 0), P)
                for t, q in zip(range(2, d + 3), pts[d + 1 :])
            ]
            z = simple_scheme(list(dict.fromkeys(mixed)))
        if z.degree > 3 * d + 1 or scheme_span_dim(z) != 3:
            continue
        if cohomology(z, d).h1 == 0:
            continue
        w = classify(z, d)
        assert isinstance(w, Witness)
        checked += 1
    assert checked >= 10
