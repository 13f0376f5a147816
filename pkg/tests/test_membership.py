from __future__ import annotations

import pytest

from terracini.linalg import DEFAULT_PRIME
from terracini.membership import (
    check_member_bounds,
    critical_count_bound,
    is_minimally_terracini,
    is_t1,
    is_terracini,
)
from terracini.projective import Point
from terracini.rng import Rng

P = DEFAULT_PRIME


def pt(*coords):
    return Point(tuple(coords), P)


def general_points(n, count, seed):
    rng = Rng(seed)
    return [Point(tuple(rng.field(P) for _ in range(n + 1)), P) for _ in range(count)]


def line_points(count, n=3, seed=1):
    rng = Rng(seed)
    ts = rng.distinct(P, count)
    return [Point((1, t) + (0,) * (n - 1), P) for t in ts]


def test_collinear_points_are_t1_but_not_terracini():
    # ceil(d/2) + 1 points on a line, d = 5.
    cert = is_t1(line_points(4), 5)
    assert cert.t1
    assert cert.span == 1
    assert not cert.terracini


def test_spanning_sets_never_terracini_for_quadrics():
    for n in (2, 3):
        for seed in range(5):
            cert = is_terracini(general_points(n, n + 2, seed), 2)
            assert not cert.terracini
            assert cert.h0 == 0 or cert.h1 == 0


def test_single_point_not_t1():
    for d in (2, 3, 4):
        assert not is_t1(general_points(3, 1, d), d).t1


def test_too_few_points_span_deficient():
    for n in (2, 3):
        cert = is_terracini(general_points(n, n, 7), 4)
        assert cert.span < n
        assert not cert.terracini


def test_alexander_hirschowitz_quintet_is_minimal():
    cert = is_minimally_terracini(general_points(2, 5, 2024), 4)
    assert cert.terracini and cert.minimal
    assert (cert.h0, cert.h1) == (1, 1)
    assert cert.subset_h1 == (0,) * 5


def test_four_coplanar_plus_one_in_p3_not_minimal():
    rng = Rng(3)
    coplanar = [Point((1, rng.field(P), rng.field(P), 0), P) for _ in range(4)]
    extra = [Point((1, 1, 1, 1), P)]
    cert = is_minimally_terracini(coplanar + extra, 3)
    assert not cert.minimal
    if cert.terracini:
        assert cert.violating_subset is not None


def test_member_bounds_on_the_quintet():
    cert = is_minimally_terracini(general_points(2, 5, 2024), 4)
    verdicts = check_member_bounds(cert)
    assert all(v.passed for v in verdicts)
    names = {v.name for v in verdicts}
    assert names == {
        "h1_at_most_n_plus_1",
        "h1_vanishes_at_next_twist",
        "cardinality_bound",
    }


def test_member_bounds_require_minimal_certificate():
    cert = is_t1(line_points(4), 5)
    with pytest.raises(ValueError):
        check_member_bounds(cert)


def test_monotone_failure_chain():
    # A set whose minimality fails keeps failing after adding points.
    base = line_points(6, n=2, seed=4)  # 6 collinear in P^2
    extra = general_points(2, 2, 90)
    cert = is_minimally_terracini(base + extra, 4)
    assert cert.terracini and cert.minimal is False
    bigger = is_minimally_terracini(base + extra + general_points(2, 1, 91), 4)
    if bigger.terracini:
        assert bigger.minimal is False


def test_certificate_json_shape():
    cert = is_minimally_terracini(general_points(2, 5, 2024), 4)
    data = cert.to_json()
    assert data["schema_version"] == 1
    assert data["minimal"] is True
    assert len(data["points"]) == 5
    assert data["cohomology"]["h1"] == 1


@pytest.mark.parametrize(
    "n,d,rho", [(2, 4, 6), (3, 7, 31), (3, 6, 22)]
)
def test_critical_count_bound_values(n, d, rho):
    assert critical_count_bound(n, d) == rho
