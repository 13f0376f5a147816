from __future__ import annotations

import numpy as np
import pytest

from terracini.linalg import DEFAULT_PRIME
from terracini.projective import (
    EmptyInput,
    Hypersurface,
    MonomialBasis,
    Point,
    apply_transform,
    evaluate_with_gradient,
    hyperplanes_through,
    invert_transform,
    monomial_count,
    monomial_exponents,
    random_transform,
    span_dim,
)
from terracini.rng import Rng

P = DEFAULT_PRIME


def pt(*coords, p=P):
    return Point(tuple(coords), p)


def test_point_normalization_and_equality():
    assert pt(2, 4, 6) == pt(1, 2, 3)
    assert pt(0, 5, 10) == pt(0, 1, 2)
    assert len({pt(2, 4, 6), pt(1, 2, 3)}) == 1
    with pytest.raises(ValueError):
        pt(0, 0, 0)


def test_span_dim_collinear_points_in_p3():
    a = pt(1, 0, 0, 0)
    b = pt(0, 1, 0, 0)
    c = pt(1, 1, 0, 0)
    assert span_dim([a, b, c]) == 1


def test_span_dim_coordinate_simplex():
    for n in (2, 3, 4):
        points = [Point(tuple(1 if i == j else 0 for i in range(n + 1)), P) for j in range(n + 1)]
        assert span_dim(points) == n


def test_span_dim_points_on_twisted_cubic():
    rng = Rng(7)
    ts = rng.distinct(P, 12)
    points = [pt(1, t, t * t % P, t * t % P * t % P) for t in ts]
    assert span_dim(points) == 3


def test_span_dim_empty_input():
    with pytest.raises(EmptyInput):
        span_dim([])


@pytest.mark.parametrize(
    "n,d,expected", [(2, 4, 15), (3, 5, 56), (3, 17, 1140)]
)
def test_monomial_count(n, d, expected):
    assert monomial_count(n, d) == expected
    assert len(monomial_exponents(n, d)) == expected


def test_monomial_count_pascal():
    for n in range(2, 5):
        for d in range(1, 9):
            assert monomial_count(n, d) == monomial_count(n - 1, d) + monomial_count(
                n, d - 1
            )


def test_monomial_order_is_graded_lex():
    exps = monomial_exponents(2, 2)
    assert exps[0] == (2, 0, 0)
    assert exps[-1] == (0, 0, 2)
    assert list(exps) == sorted(exps, reverse=True)


def test_evaluate_with_gradient_square():
    basis = MonomialBasis(2, 2)
    coeffs = [0] * len(basis)
    coeffs[basis.index((2, 0, 0))] = 1  # x0^2
    h = Hypersurface(2, 2, tuple(coeffs), P)
    value, grad = evaluate_with_gradient(h, pt(0, 1, 0))
    assert value == 0
    assert grad == (0, 0, 0)


def test_evaluate_with_gradient_product():
    basis = MonomialBasis(2, 2)
    coeffs = [0] * len(basis)
    coeffs[basis.index((1, 1, 0))] = 1  # x0 x1
    h = Hypersurface(2, 2, tuple(coeffs), P)
    value, grad = evaluate_with_gradient(h, pt(1, 1, 0))
    assert value == 1
    assert grad == (1, 1, 0)


def test_euler_identity_on_random_hypersurfaces():
    rng = Rng(123)
    for trial in range(50):
        n = 2 + rng.below(2)
        t = 1 + rng.below(6)
        ncoef = monomial_count(n, t)
        coeffs = [rng.field(P) for _ in range(ncoef)]
        if not any(coeffs):
            coeffs[0] = 1
        h = Hypersurface(n, t, tuple(coeffs), P)
        q = Point(tuple(rng.field(P) for _ in range(n)) + (1,), P)
        value, grad = evaluate_with_gradient(h, q)
        euler = sum(c * g for c, g in zip(q.coords, grad)) % P
        assert euler == t * value % P


def test_span_dim_invariant_under_projective_change():
    rng = Rng(99)
    pts = [Point(tuple(rng.field(P) for _ in range(4)), P) for _ in range(6)]
    d0 = span_dim(pts)
    a = random_transform(3, P, rng)
    moved = [Point(apply_transform(a, q.coords, P), P) for q in pts]
    assert span_dim(moved) == d0


def test_invert_transform_roundtrip():
    rng = Rng(5)
    a = random_transform(3, P, rng)
    inv = invert_transform(a, P)
    from terracini.linalg import matmul_mod
    assert (matmul_mod(a, inv, P) == np.eye(4, dtype=np.int64)).all()


def test_hyperplanes_through_collinear_points():
    a = pt(1, 0, 0, 0)
    b = pt(0, 1, 0, 0)
    cuts = hyperplanes_through([a, b])
    assert len(cuts) == 2
    for h in cuts:
        assert sum(hi * ci for hi, ci in zip(h, a.coords)) % P == 0
        assert sum(hi * ci for hi, ci in zip(h, b.coords)) % P == 0
