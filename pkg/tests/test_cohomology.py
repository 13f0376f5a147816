from __future__ import annotations

import numpy as np
import pytest

from terracini.linalg import DEFAULT_PRIME, SECOND_PRIME, matvec_mod, rank
from terracini.cohomology import (
    cohomology,
    cohomology_multi,
    condition_rows,
    hyperplane_restriction_map,
    left_kernel,
    restrict_scheme,
    restrict_to_span,
    row_blocks,
)
from terracini.projective import Hypersurface, Point, monomial_count
from terracini.rng import Rng
from terracini.schemes import (
    ZeroDimScheme,
    double,
    double_scheme,
    jet,
    simple,
    simple_scheme,
)

P = DEFAULT_PRIME


def pt(*coords, p=P):
    return Point(tuple(coords), p)


def general_points(n, count, seed, p=P):
    rng = Rng(seed)
    return [Point(tuple(rng.field(p) for _ in range(n + 1)), p) for _ in range(count)]


def test_double_point_block_shape_and_rank():
    z = ZeroDimScheme(2, (double(pt(1, 2, 3)),))
    m = condition_rows(z, 2)
    assert (m.rows, m.cols) == (3, 6)
    assert rank(m) == 3


def test_simple_point_degree_one_row_is_the_point():
    q = pt(1, 7, 9)
    z = ZeroDimScheme(2, (simple(q),))
    m = condition_rows(z, 1)
    assert m.rows == 1
    assert tuple(int(x) for x in m.entries[0]) == q.coords


def test_euler_combination_of_double_rows():
    d = 5
    q = pt(1, 2, 3, 4)
    z = ZeroDimScheme(3, (double(q),))
    m = condition_rows(z, d)
    eval_row = matvec_mod(m.entries.T, q.coords, P)
    from terracini.projective import evaluation_row

    expected = evaluation_row(q.coords, 3, d, P) * d % P
    assert (eval_row == expected).all()


def test_row_count_matches_degree():
    rng = Rng(4)
    pts = general_points(3, 4, 11)
    z = ZeroDimScheme(
        3,
        (
            double(pts[0]),
            jet(pts[1], [rng.field(P) for _ in range(4)]),
            simple(pts[2]),
            double(pts[3]),
        ),
    )
    m = condition_rows(z, 3)
    assert m.rows == z.degree == 11
    assert row_blocks(z) == [(0, 4), (4, 6), (6, 7), (7, 11)]


def test_alexander_hirschowitz_plane_quartics():
    z = double_scheme(general_points(2, 5, 2024))
    rep = cohomology(z, 4)
    assert (rep.h0, rep.h1) == (1, 1)


def test_nine_double_points_in_p3_quartics():
    z = double_scheme(general_points(3, 9, 31))
    rep = cohomology(z, 4)
    assert (rep.h0, rep.h1) == (1, 2)
    assert rep.rank == 34


def test_collinear_points_one_above_threshold():
    pts = [pt(1, k, 0) for k in range(1, 7)]
    rep = cohomology(simple_scheme(pts), 4)
    assert rep.rank == 5
    assert rep.h1 == 1


def test_report_identities_hold():
    rng = Rng(77)
    for trial in range(20):
        n = 2 + rng.below(2)
        d = 2 + rng.below(5)
        count = 1 + rng.below(6)
        z = double_scheme(general_points(n, count, 1000 + trial))
        rep = cohomology(z, d)
        assert rep.h0 - rep.h1 == monomial_count(n, d) - rep.scheme_degree
        assert rep.h0 >= 0 and rep.h1 >= 0


def test_monotone_in_the_scheme():
    pts = general_points(2, 6, 5)
    big = double_scheme(pts)
    for d in (3, 4, 5):
        rep_big = cohomology(big, d)
        for k in range(len(pts)):
            small = big.without(k)
            rep_small = cohomology(small, d)
            assert rep_small.h1 <= rep_big.h1
            assert rep_big.h0 <= rep_small.h0


def test_monotone_in_the_twist():
    pts = [pt(1, k, 0) for k in range(1, 8)] + general_points(2, 2, 6)
    z = double_scheme(pts)
    prev = cohomology(z, 2)
    for d in range(3, 9):
        cur = cohomology(z, d)
        assert cur.h1 <= prev.h1
        assert prev.h0 <= cur.h0
        prev = cur


def test_residual_sequence_inequality_for_sets_in_a_hyperplane():
    # Points inside the plane x3 = 0 in P^3: the in-plane h1 sandwiches the
    # ambient one between itself and itself plus the simple-residual term.
    rng = Rng(8)
    for d in (3, 4, 5):
        pts = [
            Point((1, rng.field(P), rng.field(P), 0), P) for _ in range(d + 2)
        ]
        z = double_scheme(pts)
        in_plane = restrict_scheme(z, [0, 0, 0, 1])
        ambient = cohomology(z, d).h1
        inside = cohomology(in_plane, d).h1
        simple_part = cohomology(simple_scheme(pts), d - 1).h1
        assert inside <= ambient <= inside + simple_part


def test_concision_for_plane_configurations_in_p3():
    rng = Rng(13)
    for trial in range(6):
        count = 4 + rng.below(5)
        d = 3 + rng.below(3)
        pts = [
            Point((1, rng.field(P), rng.field(P), 0), P) for _ in range(count)
        ]
        # Mix in a collinear batch every other trial to hit h1 > 0.
        if trial % 2:
            pts = [Point((1, k, 0, 0), P) for k in range(1, count + 1)]
        z = double_scheme(pts)
        inside = cohomology(restrict_to_span(z), d)
        ambient = cohomology(z, d)
        assert (ambient.h1 > 0) == (inside.h1 > 0)


def test_single_double_point_imposes_independent_conditions():
    for n in (2, 3, 4):
        for d in (2, 3, 4):
            z = double_scheme(general_points(n, 1, n * 10 + d))
            assert cohomology(z, d).h1 == 0


def test_left_kernel_certifies_h1():
    z = double_scheme([pt(1, k, 0) for k in range(1, 5)])  # collinear
    prof = left_kernel(z, 4)
    m = condition_rows(z, 4)
    assert len(prof.left_kernel_basis) == cohomology(z, 4).h1
    for v in prof.left_kernel_basis:
        assert not (matvec_mod(m.entries.T, v, P) % P).any()


def test_cohomology_multi_prime_agreement():
    def builder(p):
        return double_scheme(general_points(3, 9, 31, p=p))

    rep = cohomology_multi(builder, 4, (DEFAULT_PRIME, SECOND_PRIME))
    assert (rep.h0, rep.h1) == (1, 2)
    assert not rep.disagree
    assert rep.primes == (DEFAULT_PRIME, SECOND_PRIME)


def test_restriction_map_sends_hyperplane_to_last_coordinate():
    from terracini.linalg import Matrix

    h = [3, 1, 4, 1]
    a = hyperplane_restriction_map(h, P)
    assert rank(Matrix(4, 4, P, a)) == 4
    assert tuple(int(x) for x in a[-1]) == tuple(h)


def test_prime_must_exceed_twist():
    z = double_scheme(general_points(2, 2, 1, p=5))
    with pytest.raises(ValueError):
        condition_rows(z, 7)
