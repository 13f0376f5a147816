"""Membership tests for Terracini and minimally-Terracini loci.

A set S of x points spanning P^n is Terracini for twist d when the double
scheme 2S fails to impose independent conditions on degree-d forms while
some form still passes doubly through all of S:

    h0(I_2S(d)) > 0  and  h1(I_2S(d)) > 0  and  span(S) = P^n.

Dropping the span condition gives the weaker "dependent conditions" test.
S is minimally Terracini when additionally every proper subset imposes
independent conditions.  By monotonicity of h1 under subschemes it is
enough to check the x subsets of size x-1: any bad subset extends to a
bad maximal one, so the check costs x rank computations instead of 2^x.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import ceil, comb
from typing import Sequence

from .cohomology import SCHEMA_VERSION, CohomologyReport, cohomology
from .projective import Point, monomial_count, span_dim
from .schemes import double_scheme


@dataclass(frozen=True)
class MembershipCertificate:
    """Everything needed to re-verify a membership verdict offline."""

    points: tuple[Point, ...]
    d: int
    h0: int
    h1: int
    span: int
    t1: bool
    terracini: bool
    minimal: bool | None
    subset_h1: tuple[int, ...] | None = None
    violating_subset: tuple[int, ...] | None = None
    report: CohomologyReport | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.points[0].n

    @property
    def x(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "d": self.d,
            "x": self.x,
            "prime": self.points[0].p,
            "points": [list(q.coords) for q in self.points],
            "h0": self.h0,
            "h1": self.h1,
            "span_dim": self.span,
            "t1": self.t1,
            "terracini": self.terracini,
            "minimal": self.minimal,
        }
        if self.subset_h1 is not None:
            out["subset_h1"] = list(self.subset_h1)
        if self.violating_subset is not None:
            out["violating_subset"] = list(self.violating_subset)
        if self.report is not None:
            out["cohomology"] = self.report.to_json()
        return out


def _base(points: Sequence[Point], d: int) -> tuple[CohomologyReport, int, bool]:
    rep = cohomology(double_scheme(list(points)), d)
    span = span_dim(list(points))
    t1 = rep.h0 > 0 and rep.h1 > 0
    return rep, span, t1


def is_t1(points: Sequence[Point], d: int) -> MembershipCertificate:
    """Dependent-conditions test: h0 and h1 of 2S both positive, no span
    requirement."""
    rep, span, t1 = _base(points, d)
    return MembershipCertificate(
        points=tuple(points),
        d=d,
        h0=rep.h0,
        h1=rep.h1,
        span=span,
        t1=t1,
        terracini=t1 and span == points[0].n,
        minimal=None,
        report=rep,
    )


def is_terracini(points: Sequence[Point], d: int) -> MembershipCertificate:
    """Terracini test: dependent conditions plus spanning."""
    return is_t1(points, d)


def is_minimally_terracini(points: Sequence[Point], d: int) -> MembershipCertificate:
    """Full membership test including minimality over maximal subsets.

    Stops at the first violating subset; when the verdict is positive the
    certificate carries every subset's h1 (all zero).
    """
    cert = is_t1(points, d)
    if not cert.terracini:
        return cert
    subset_values: list[int] = []
    for skip in range(len(points)):
        sub = [q for i, q in enumerate(points) if i != skip]
        h1 = cohomology(double_scheme(sub), d).h1
        subset_values.append(h1)
        if h1 > 0:
            witness = tuple(i for i in range(len(points)) if i != skip)
            return MembershipCertificate(
                points=cert.points,
                d=d,
                h0=cert.h0,
                h1=cert.h1,
                span=cert.span,
                t1=cert.t1,
                terracini=cert.terracini,
                minimal=False,
                subset_h1=tuple(subset_values),
                violating_subset=witness,
                report=cert.report,
            )
    return MembershipCertificate(
        points=cert.points,
        d=d,
        h0=cert.h0,
        h1=cert.h1,
        span=cert.span,
        t1=cert.t1,
        terracini=cert.terracini,
        minimal=True,
        subset_h1=tuple(subset_values),
        report=cert.report,
    )


def critical_count_bound(n: int, d: int) -> int:
    """Largest x for which a minimally Terracini set can exist: with
    x - 1 subsets imposing independent conditions, (x-1)(n+1) cannot
    exceed the number of degree-d monomials."""
    return ceil((comb(n + d, n) + 1) / (n + 1))


@dataclass(frozen=True)
class BoundVerdict:
    name: str
    passed: bool
    detail: str


def check_member_bounds(cert: MembershipCertificate) -> list[BoundVerdict]:
    """Structural bounds every minimally Terracini member must satisfy:
    h1 at the twist is at most n+1, h1 vanishes at the next twist, and the
    cardinality stays below the counting bound."""
    if cert.minimal is not True:
        raise ValueError("bounds apply to verified minimal members")
    n = cert.n
    out = [
        BoundVerdict(
            "h1_at_most_n_plus_1",
            cert.h1 <= n + 1,
            f"h1={cert.h1} vs n+1={n + 1}",
        )
    ]
    nxt = cohomology(double_scheme(list(cert.points)), cert.d + 1)
    out.append(
        BoundVerdict(
            "h1_vanishes_at_next_twist",
            nxt.h1 == 0,
            f"h1(d+1)={nxt.h1}",
        )
    )
    rho = critical_count_bound(n, cert.d)
    out.append(
        BoundVerdict("cardinality_bound", cert.x <= rho, f"x={cert.x} vs rho={rho}")
    )
    return out


def certificate_to_json_str(cert: MembershipCertificate) -> str:
    return json.dumps(cert.to_json(), sort_keys=True)
