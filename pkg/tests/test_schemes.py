from __future__ import annotations

import pytest

from terracini.linalg import DEFAULT_PRIME
from terracini.projective import Hypersurface, MonomialBasis, Point, monomial_count
from terracini.rng import Rng
from terracini.schemes import (
    DOUBLE,
    JET,
    SIMPLE,
    DegenerateLine,
    DuplicatePoint,
    ZeroDimScheme,
    double,
    double_scheme,
    intersection_degree_hypersurface,
    intersection_degree_line,
    jet,
    residual,
    scheme_from_json,
    scheme_to_json,
    simple,
    simple_scheme,
    subscheme_of,
)

P = DEFAULT_PRIME


def pt(*coords):
    return Point(tuple(coords), P)


def hyperplane(n, coeffs):
    # Degree-1 hypersurface from a coefficient vector over the monomials
    # x0, ..., xn (graded-lex order of degree 1 is exactly that).
    return Hypersurface(n, 1, tuple(coeffs), P)


def form(n, t, assignments):
    basis = MonomialBasis(n, t)
    coeffs = [0] * len(basis)
    for exp, c in assignments.items():
        coeffs[basis.index(exp)] = c
    return Hypersurface(n, t, tuple(coeffs), P)


@pytest.mark.parametrize(
    "n,count,expected", [(2, 5, 15), (3, 12, 48), (4, 1, 5)]
)
def test_double_scheme_degree(n, count, expected):
    rng = Rng(n * 1000 + count)
    pts = [
        Point(tuple(rng.field(P) for _ in range(n + 1)), P) for _ in range(count)
    ]
    z = double_scheme(pts)
    assert z.degree == expected


def test_double_scheme_rejects_duplicates():
    with pytest.raises(DuplicatePoint):
        double_scheme([pt(1, 2, 3), pt(2, 4, 6)])


def test_jet_rejects_euler_direction():
    with pytest.raises(ValueError):
        jet(pt(1, 2, 3), [2, 4, 6])


def test_jet_direction_canonical_mod_base():
    a = jet(pt(1, 2, 3), [0, 1, 0])
    b = jet(pt(1, 2, 3), [1, 3, 3])  # same direction plus the base point
    assert a.direction == b.direction


def test_residual_double_point_smooth_hyperplane():
    # Plane x3 = 0 through the point, smooth there: the double point
    # shrinks to its reduction.
    q = pt(1, 2, 3, 0)
    z = ZeroDimScheme(3, (double(q),))
    h = hyperplane(3, [0, 0, 0, 1])
    res = residual(z, h)
    assert res.components == (simple(q),)


def test_residual_jet_inside_hyperplane_removed():
    q = pt(1, 2, 0)
    v = [0, 1, 0]  # tangent to the line x2 = 0
    z = ZeroDimScheme(2, (jet(q, v),))
    h = hyperplane(2, [0, 0, 1])
    assert residual(z, h).components == ()


def test_residual_jet_transverse_hyperplane_shrinks():
    q = pt(1, 2, 0)
    z = ZeroDimScheme(2, (jet(q, [0, 0, 1]),))
    h = hyperplane(2, [0, 0, 1])
    assert residual(z, h).components == (simple(q),)


def test_residual_double_point_double_plane_removed():
    q = pt(1, 2, 3, 0)
    z = ZeroDimScheme(3, (double(q),))
    sq = form(3, 2, {(0, 0, 0, 2): 1})  # x3^2, singular along x3 = 0
    assert residual(z, sq).components == ()


def test_residual_keeps_components_off_the_hypersurface():
    q = pt(1, 1, 1)
    z = ZeroDimScheme(2, (double(q), simple(pt(1, 0, 0))))
    h = hyperplane(2, [1, 0, 13])  # vanishes at neither point
    assert residual(z, h) == z


def test_residual_quotient_rule_monomial_cases():
    # At q = [1:0:...:0] the double point ideal is (x1, ..., xn)^2; the
    # quotient by f is (1), (x1..xn) or the ideal itself according to the
    # order of vanishing of f at q, so the component disappears, shrinks,
    # or survives whole.
    q = pt(1, 0, 0)
    z = ZeroDimScheme(2, (double(q),))
    f_unit = form(2, 2, {(2, 0, 0): 1})  # x0^2, f(q) != 0
    f_smooth = form(2, 2, {(1, 1, 0): 1})  # x0 x1, vanishing order 1
    f_singular = form(2, 2, {(0, 2, 0): 1, (0, 1, 1): 1})  # x1^2 + x1 x2
    assert residual(z, f_unit) == z
    assert residual(z, f_smooth).components == (simple(q),)
    assert residual(z, f_singular).components == ()


def test_degree_additivity_of_residual():
    rng = Rng(321)
    pts = [Point(tuple(rng.field(P) for _ in range(4)), P) for _ in range(6)]
    comps = (
        double(pts[0]),
        double(pts[1]),
        jet(pts[2], [rng.field(P) for _ in range(4)]),
        simple(pts[3]),
        simple(pts[4]),
        jet(pts[5], [rng.field(P) for _ in range(4)]),
    )
    z = ZeroDimScheme(3, comps)
    for trial in range(10):
        coeffs = [rng.field(P) for _ in range(monomial_count(3, 2))]
        coeffs[0] = coeffs[0] or 1
        f = Hypersurface(3, 2, tuple(coeffs), P)
        res = residual(z, f)
        assert res.degree + intersection_degree_hypersurface(z, f) == z.degree
        assert subscheme_of(res, z)


def test_residual_monotone_in_the_scheme():
    rng = Rng(55)
    pts = [Point(tuple(rng.field(P) for _ in range(4)), P) for _ in range(4)]
    big = ZeroDimScheme(3, tuple(double(q) for q in pts))
    small = ZeroDimScheme(3, (simple(pts[0]), double(pts[1]), double(pts[2])))
    assert subscheme_of(small, big)
    h = hyperplane(3, [1, 1, 1, 1])
    assert subscheme_of(residual(small, h), residual(big, h))


def test_intersection_degree_line_simple_points():
    a, b = pt(1, 0, 0), pt(0, 1, 0)
    pts = [pt(1, k, 0) for k in range(1, 7)]
    z = simple_scheme(pts)
    assert intersection_degree_line(z, a, b) == 6


def test_intersection_degree_line_double_point():
    a, b = pt(1, 0, 0), pt(0, 1, 0)
    z = ZeroDimScheme(2, (double(pt(1, 5, 0)),))
    assert intersection_degree_line(z, a, b) == 2


def test_intersection_degree_line_jet_cases():
    a, b = pt(1, 0, 0, 0), pt(0, 1, 0, 0)
    on_line_tangent = jet(pt(1, 5, 0, 0), [0, 1, 0, 0])
    on_line_transverse = jet(pt(1, 5, 0, 0), [0, 0, 1, 0])
    off_line = jet(pt(1, 0, 1, 0), [0, 1, 0, 0])
    assert intersection_degree_line(ZeroDimScheme(3, (on_line_tangent,)), a, b) == 2
    assert intersection_degree_line(ZeroDimScheme(3, (on_line_transverse,)), a, b) == 1
    assert intersection_degree_line(ZeroDimScheme(3, (off_line,)), a, b) == 0
    with pytest.raises(DegenerateLine):
        intersection_degree_line(ZeroDimScheme(3, (off_line,)), a, a)


def test_intersection_degree_hypersurface_cases():
    q = pt(1, 2, 3, 0)
    z = ZeroDimScheme(3, (double(q),))
    h = hyperplane(3, [0, 0, 0, 1])
    assert intersection_degree_hypersurface(z, h) == 3  # (n+1) - 1
    far_jet = ZeroDimScheme(3, (jet(pt(1, 1, 1, 1), [0, 1, 0, 0]),))
    assert intersection_degree_hypersurface(far_jet, h) == 0


def test_scheme_json_roundtrip():
    rng = Rng(9)
    pts = [Point(tuple(rng.field(P) for _ in range(4)), P) for _ in range(3)]
    z = ZeroDimScheme(
        3, (double(pts[0]), jet(pts[1], [1, 0, 0, 1]), simple(pts[2]))
    )
    data = scheme_to_json(z)
    assert data["components"][0]["kind"] == DOUBLE
    back = scheme_from_json(data, P)
    assert back == z
