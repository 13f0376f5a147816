"""Verification suites: positive construction grids and seeded emptiness
searches, with machine-readable reports.

Every suite is fully determined by (suite id, grid, seed, primes): each
trial derives its own seed by hashing (master seed, cell key, trial
index), so reports are independent of scheduling and reproduce
bit-for-bit (timing and environment metadata aside).

Emptiness results are evidence, not proof: the searches corroborate the
proved statements and hunt for implementation bugs.  Their hard assertion
is different: every Terracini hit must be *explained* (violating subset,
witness curve, span deficiency, vanishing h0 or h1), and every critical
scheme of a hit must classify.  A minimally-Terracini verdict inside a
proven-empty cell is a counterexample and ships with a full re-checkable
certificate.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import ceil, comb
from typing import Callable, Sequence

import numpy as np

from .cohomology import SCHEMA_VERSION, cohomology, restrict_to_span
from .constructions import (
    COMPLETE_INTERSECTION,
    FREE_POINTS,
    CurveSpec,
    ai0_witness,
    curve_side_oracle,
    elliptic_quartic_points,
    plane_cubic_points,
    random_points,
    reducible_rnc_necessary_conditions,
    reducible_rnc_points,
    rnc_points,
)
from .critical import find_critical
from .linalg import DEFAULT_PRIME
from .membership import (
    MembershipCertificate,
    check_member_bounds,
    critical_count_bound,
    is_minimally_terracini,
    is_t1,
    is_terracini,
)
from .projective import Point, apply_transform, random_transform, span_dim
from .rng import Rng, derive_seed
from .schemes import double_scheme
from .witness import (
    ClassificationIncomplete,
    DEFAULT_CONIC_BUDGET,
    classify,
    find_line_witness,
    scheme_span_dim,
)


class CounterexampleFound(RuntimeError):
    """A suite produced a verdict the theory forbids.  The payload is the
    most important output the tool can produce: a full certificate that
    can be re-checked offline and at other primes."""

    def __init__(self, suite: str, payload: dict):
        super().__init__(f"counterexample recorded by suite {suite!r}")
        self.suite = suite
        self.payload = payload


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    seed: int = 0
    primes: tuple[int, ...] = (DEFAULT_PRIME,)
    trials: int | None = None
    budget: int = DEFAULT_CONIC_BUDGET
    d_values: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "primes": list(self.primes),
            "trials": self.trials,
            "budget": self.budget,
            "d_values": list(self.d_values) if self.d_values else None,
        }


@dataclass
class CellResult:
    cell: dict
    status: str
    trials: int = 0
    refutations: dict[str, int] = field(default_factory=dict)
    members: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    retry_trail: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "cell": self.cell,
            "status": self.status,
            "trials": self.trials,
            "refutations": dict(sorted(self.refutations.items())),
            "members": self.members,
            "counterexamples": self.counterexamples,
            "notes": self.notes,
            "retry_trail": self.retry_trail,
        }


@dataclass
class SuiteReport:
    suite: str
    config: SuiteConfig
    cells: list[CellResult]
    elapsed_seconds: float

    @property
    def counterexamples(self) -> list[dict]:
        out = []
        for cell in self.cells:
            out.extend(cell.counterexamples)
        return out

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        import matplotlib
        import sys

        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config.to_json(),
            "passed": self.passed,
            "counterexample_count": len(self.counterexamples),
            "evidence_note": (
                "randomized emptiness results are evidence, not proof; "
                "positive verifications are exact over the stated primes"
            ),
            "cells": [c.to_json() for c in self.cells],
            "timing": {"elapsed_seconds": round(self.elapsed_seconds, 3)},
            "environment": {
                "python": sys.version.split()[0],
                "numpy": np.__version__,
                "matplotlib": matplotlib.__version__,
            },
        }

    def raise_on_counterexample(self) -> None:
        bad = self.counterexamples
        if bad:
            raise CounterexampleFound(self.suite, bad[0])


# --- shared helpers --------------------------------------------------------


def _x_min(n: int, d: int) -> int:
    return n + ceil(d / 2)


def _member_payload(cert: MembershipCertificate, extra: dict | None = None) -> dict:
    out = {"certificate": cert.to_json()}
    if extra:
        out.update(extra)
    return out


def verify_minimal_member(
    points: Sequence[Point], d: int, cell: CellResult, extra: dict | None = None
) -> bool:
    """Full positive verification: minimal membership, the structural
    bounds, and a critical scheme with h1 = 1 and full support.  Any
    failure lands in the cell's counterexample slot."""
    cert = is_minimally_terracini(points, d)
    payload = _member_payload(cert, extra)
    if cert.minimal is not True:
        payload["failure"] = "expected a minimally Terracini member"
        cell.counterexamples.append(payload)
        return False
    bounds = check_member_bounds(cert)
    payload["bounds"] = [
        {"name": b.name, "passed": b.passed, "detail": b.detail} for b in bounds
    ]
    crit = find_critical(list(points), d, expect_full_support=True)
    payload["critical"] = {
        "degree": crit.scheme.degree,
        "h1": crit.h1,
        "support_size": len(crit.scheme.support),
    }
    ok = all(b.passed for b in bounds) and crit.h1 == 1
    if not ok:
        payload["failure"] = "structural bounds violated"
        cell.counterexamples.append(payload)
        return False
    cell.members.append(payload)
    return True


def classify_critical_of_hit(
    points: Sequence[Point], d: int, budget: int
) -> dict:
    """Extract a critical scheme from a Terracini hit and classify it,
    restricting to its span first when it is degenerate."""
    crit = find_critical(list(points), d)
    z = crit.scheme
    span = scheme_span_dim(z)
    if z.n == 3 and span < 3:
        z = restrict_to_span(z)
    if z.n == 1 or span == 1:
        w = find_line_witness(z if z.n > 1 else crit.scheme, d)
        if w is None:
            raise ClassificationIncomplete("collinear scheme without a line", z, d)
        return {"witness": w.to_json(), "span": span, "twist": d}
    t = d
    while True:
        try:
            w = classify(z, t, budget=budget)
            return {"witness": w.to_json(), "span": span, "twist": t}
        except ValueError as exc:
            if "maximal" in str(exc) and t < d + 8:
                t += 1
                continue
            raise


def emptiness_trial(
    builder: Callable[[int], list[Point]],
    d: int,
    primes: Sequence[int],
    cell: CellResult,
    budget: int,
    require: str = "minimal",
    classify_hits: bool = False,
) -> None:
    """One trial of an emptiness search.

    require="minimal": a minimally-Terracini verdict is the counterexample;
    require="terracini": any Terracini verdict is.  Every negative verdict
    records its refutation reason; verdict disagreement across primes is
    flagged, never silently dropped.
    """

    def bump(reason: str) -> None:
        cell.refutations[reason] = cell.refutations.get(reason, 0) + 1

    points = builder(primes[0])
    cert = is_t1(points, d)
    if len(primes) > 1:
        for p in primes[1:]:
            other = is_t1(builder(p), d)
            if (other.t1, other.terracini) != (cert.t1, cert.terracini):
                bump("prime_disagreement")
    n = points[0].n
    if cert.span < n:
        bump("span_deficient")
        return
    if cert.h1 == 0:
        bump("h1_zero")
        return
    if cert.h0 == 0:
        bump("h0_zero")
        return
    # The trial produced a Terracini set.
    if require == "terracini":
        payload = _member_payload(cert, {"failure": "Terracini set in an empty range"})
        cell.counterexamples.append(payload)
        return
    full = is_minimally_terracini(points, d)
    if full.minimal:
        payload = _member_payload(
            full, {"failure": "minimally Terracini set in an empty range"}
        )
        cell.counterexamples.append(payload)
        return
    bump("violating_subset")
    if classify_hits:
        try:
            info = classify_critical_of_hit(points, d, budget)
            kind = info["witness"]["kind"]
            bump(f"witness_{kind}")
        except ClassificationIncomplete as exc:
            cell.counterexamples.append(
                {"failure": "critical scheme escaped classification",
                 **exc.payload()}
            )


# --- structured candidate generators ---------------------------------------


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def _random_allocation(rng: Rng, segments: int, total: int) -> list[int]:
    alloc = [1] * segments
    for _ in range(total - segments):
        alloc[rng.below(segments)] += 1
    return alloc


def _conic_in_plane_p3(x: int, seed: int, prime: int) -> list[Point]:
    _, flat = rnc_points(2, x, seed, prime)
    rng = Rng(derive_seed(seed, "plane-embed"))
    b = None
    while b is None:
        cand = np.asarray(
            [[rng.field(prime) for _ in range(3)] for _ in range(4)], dtype=np.int64
        )
        from .linalg import Matrix, rank

        if rank(Matrix(4, 3, prime, cand)) == 3:
            b = cand
    from .linalg import matvec_mod

    return [
        Point(tuple(int(v) for v in matvec_mod(b, q.coords, prime)), prime)
        for q in flat
    ]


def structured_points(
    n: int, d: int, x: int, variant: int, seed: int, prime: int
) -> tuple[str, list[Point]]:
    """Deterministic family of search candidates, cycling through the
    structured generators and uniform sampling."""
    rng = Rng(derive_seed(seed, "structured", variant))
    labels = [
        "uniform",
        "rnc",
        "collinear_augmented",
        "reducible_rnc",
        "coplanar_augmented" if n >= 3 else "conic_plus_line",
        "elliptic" if n == 3 else "conic_points",
        "perturbed_rnc",
        "conic_in_plane" if n == 3 else "conic_points",
    ]
    label = labels[variant % len(labels)]
    try:
        if label == "uniform":
            return label, random_points(n, x, seed, prime)
        if label == "rnc":
            return label, rnc_points(n, x, seed, prime)[1]
        if label == "collinear_augmented":
            if x < n:
                return "uniform", random_points(n, x, seed, prime)
            most = max(2, min(x - n + 1, ceil(d / 2) + 1 + rng.below(2)))
            ts = rng.distinct(prime, most)
            line = [Point((1, t) + (0,) * (n - 1), prime) for t in ts]
            rest = random_points(n, x - most, derive_seed(seed, "rest"), prime)
            pts = line + rest
            if len(set(pts)) == len(pts):
                return label, pts
            return "uniform", random_points(n, x, seed, prime)
        if label == "reducible_rnc":
            comps = _compositions(n, 2) if n > 2 else [(1, 1)]
            chain = comps[rng.below(len(comps))]
            if x < len(chain):
                return "uniform", random_points(n, x, seed, prime)
            alloc = _random_allocation(rng, len(chain), x)
            return label, reducible_rnc_points(chain, alloc, seed, prime)[1]
        if label == "coplanar_augmented":
            sub = max(4, x - 1 - rng.below(2)) if x > 4 else x
            sub = min(sub, x)
            flat = [
                Point((1, rng.field(prime), rng.field(prime)) + (0,) * (n - 2), prime)
                for _ in range(sub)
            ]
            rest = random_points(n, x - sub, derive_seed(seed, "rest"), prime)
            a = random_transform(n, prime, rng)
            pts = [
                Point(apply_transform(a, q.coords, prime), prime)
                for q in flat + rest
            ]
            if len(set(pts)) == len(pts):
                return label, pts
            return "uniform", random_points(n, x, seed, prime)
        if label == "conic_plus_line":
            on_conic = max(3, x - max(2, ceil(d / 2)))
            conic_pts = rnc_points(2, on_conic, seed, prime)[1]
            ts = rng.distinct(prime, x - on_conic)
            line = [Point((1, t, 0), prime) for t in ts]
            pts = conic_pts + line
            if len(set(pts)) == len(pts):
                return label, pts
            return "uniform", random_points(n, x, seed, prime)
        if label == "elliptic":
            return label, elliptic_quartic_points(0, seed, prime, count=x)[1]
        if label == "conic_points":
            return label, rnc_points(2, x, seed, prime)[1]
        if label == "conic_in_plane":
            on_conic = max(5, x - 1 - rng.below(2))
            if on_conic >= x:
                return label, _conic_in_plane_p3(x, seed, prime)
            rest = random_points(n, x - on_conic, derive_seed(seed, "rest"), prime)
            pts = _conic_in_plane_p3(on_conic, seed, prime) + rest
            if len(set(pts)) == len(pts):
                return label, pts
            return "uniform", random_points(n, x, seed, prime)
        if label == "perturbed_rnc":
            pts = rnc_points(n, x, seed, prime)[1]
            if x > n + 1:
                pts = pts[:-1] + random_points(n, 1, derive_seed(seed, "p"), prime)
            if len(set(pts)) == len(pts):
                return label, pts
            return "uniform", random_points(n, x, seed, prime)
    except Exception:
        return "uniform", random_points(n, x, seed, prime)
    return "uniform", random_points(n, x, seed, prime)


def _run_emptiness_cell(
    cfg: SuiteConfig,
    cell: CellResult,
    n: int,
    d: int,
    x: int,
    trials: int,
    require: str,
    classify_hits: bool = False,
) -> None:
    key = json.dumps(cell.cell, sort_keys=True)
    for trial in range(trials):
        tseed = derive_seed(cfg.seed, cfg.suite, key, trial)

        def builder(p: int, _s=tseed, _v=trial) -> list[Point]:
            return structured_points(n, d, x, _v, _s, p)[1]

        emptiness_trial(
            builder,
            d,
            cfg.primes,
            cell,
            cfg.budget,
            require=require,
            classify_hits=classify_hits,
        )
        cell.trials += 1
    if not cell.counterexamples:
        cell.status = "empty_as_expected"
    else:
        cell.status = "counterexample"


# --- individual suites -----------------------------------------------------


def _suite_ai0(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or tuple(range(3, 9))
    trials = cfg.trials if cfg.trials is not None else 500
    for n in (2, 3):
        for d in d_values:
            if (n, d) == (2, 3):
                continue
            xmin = _x_min(n, d)
            for x in range(xmin, xmin + 4):
                cell = CellResult(
                    cell={"n": n, "d": d, "x": x, "kind": "member"},
                    status="pending",
                )
                try:
                    pts = ai0_witness(
                        n, d, x, derive_seed(cfg.seed, "ai0", n, d, x), cfg.primes[0]
                    )
                    cert = is_terracini(pts, d)
                except Exception as exc:
                    cell.counterexamples.append(
                        {"failure": f"witness construction failed: {exc}"}
                    )
                    cell.status = "counterexample"
                    cells.append(cell)
                    continue
                if cert.terracini:
                    cell.members.append(_member_payload(cert))
                    cell.status = "member_verified"
                else:
                    cell.counterexamples.append(
                        _member_payload(cert, {"failure": "witness not Terracini"})
                    )
                    cell.status = "counterexample"
                cells.append(cell)
            for x in range(n + 1, xmin):
                cell = CellResult(
                    cell={"n": n, "d": d, "x": x, "kind": "empty_below_threshold"},
                    status="pending",
                )
                _run_emptiness_cell(cfg, cell, n, d, x, trials, require="terracini")
                cells.append(cell)
    return cells


def _suite_43(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or tuple(range(3, 9))
    trials = cfg.trials if cfg.trials is not None else 200
    for n in (2, 3):
        for d in d_values:
            for x in range(n + 1, _x_min(n, d)):
                cell = CellResult(
                    cell={"n": n, "d": d, "x": x, "kind": "empty_below_threshold"},
                    status="pending",
                )
                _run_emptiness_cell(cfg, cell, n, d, x, trials, require="terracini")
                cells.append(cell)
    return cells


def _suite_a90(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or tuple(range(4, 9))
    for n in (2, 3, 4):
        for d in d_values:
            x = 1 + ceil(n * d / 2)
            cell = CellResult(
                cell={"n": n, "d": d, "x": x, "kind": "rnc_member"},
                status="pending",
            )
            spec, pts = rnc_points(n, x, derive_seed(cfg.seed, "a90", n, d), cfg.primes[0])
            expected = curve_side_oracle(spec, x, d)
            ok = verify_minimal_member(pts, d, cell, {"curve_side_h1": expected})
            if ok:
                h1 = cell.members[-1]["certificate"]["h1"]
                if h1 < expected:
                    cell.counterexamples.append(
                        {"failure": "matrix h1 below the curve-side bound",
                         "h1": h1, "curve_side": expected}
                    )
                cell.notes.append(
                    f"curve-side h1 {expected}, matrix h1 {h1}"
                )
            cell.status = "member_verified" if not cell.counterexamples else "counterexample"
            cells.append(cell)

            low = ceil(n * d / 2)
            cell2 = CellResult(
                cell={"n": n, "d": d, "x": low, "kind": "independent_below"},
                status="pending",
            )
            _, pts2 = rnc_points(n, low, derive_seed(cfg.seed, "a90low", n, d), cfg.primes[0])
            h1 = cohomology(double_scheme(pts2), d).h1
            if h1 == 0:
                cell2.status = "property_holds"
                cell2.notes.append("h1 = 0 exactly")
            else:
                cell2.status = "counterexample"
                cell2.counterexamples.append(
                    {"failure": "dependent conditions below the threshold", "h1": h1}
                )
            cells.append(cell2)
    # Larger cardinalities stay plainly Terracini in 3-space and beyond.
    for n in (3, 4):
        d = d_values[0]
        for bump in (1, 3):
            x = 1 + ceil(n * d / 2) + bump
            cell = CellResult(
                cell={"n": n, "d": d, "x": x, "kind": "terracini_above"},
                status="pending",
            )
            _, pts = rnc_points(n, x, derive_seed(cfg.seed, "a90up", n, d, x), cfg.primes[0])
            cert = is_terracini(pts, d)
            if cert.terracini:
                cell.status = "member_verified"
                cell.members.append(_member_payload(cert))
            else:
                cell.status = "counterexample"
                cell.counterexamples.append(
                    _member_payload(cert, {"failure": "expected a Terracini set"})
                )
            cells.append(cell)
    # Cubic twist in 4-space at the exceptional cardinality.
    cell = CellResult(cell={"n": 4, "d": 3, "x": 7, "kind": "rnc_member"}, status="pending")
    _, pts = rnc_points(4, 7, derive_seed(cfg.seed, "a90-43"), cfg.primes[0])
    cert = is_terracini(pts, 3)
    if cert.terracini:
        cell.status = "member_verified"
        cell.members.append(_member_payload(cert))
    else:
        cell.status = "counterexample"
        cell.counterexamples.append(_member_payload(cert, {"failure": "expected Terracini"}))
    cells.append(cell)
    return cells


def _suite_rob1(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or (4, 5, 6, 7, 8)

    def family(seed_label: str, d: int):
        if seed_label == "rnc2":
            return rnc_points(2, d + 1, derive_seed(cfg.seed, "rob1", seed_label, d), cfg.primes[0])[1]
        if seed_label == "rnc3":
            return rnc_points(3, 1 + ceil(3 * d / 2), derive_seed(cfg.seed, "rob1", seed_label, d), cfg.primes[0])[1]
        if seed_label == "elliptic":
            return elliptic_quartic_points(d, derive_seed(cfg.seed, "rob1", seed_label, d), cfg.primes[0])[1]
        if seed_label == "cubic_ci":
            return plane_cubic_points(d, COMPLETE_INTERSECTION, derive_seed(cfg.seed, "rob1", seed_label, d), cfg.primes[0])[1]
        if seed_label == "cubic_free":
            return plane_cubic_points(d, FREE_POINTS, derive_seed(cfg.seed, "rob1", seed_label, d), cfg.primes[0])[1]
        raise ValueError(seed_label)

    jobs = [("rnc2", d) for d in d_values] + [("rnc3", d) for d in d_values]
    jobs += [("elliptic", d) for d in d_values if d % 2 == 0 and d >= 6]
    jobs += [("cubic_ci", d) for d in d_values if d % 2 == 0 and d >= 6]
    jobs += [("cubic_free", d) for d in d_values if d % 2 == 1 and d >= 7]

    for label, d in jobs:
        cell = CellResult(
            cell={"family": label, "d": d, "kind": "twist_uniqueness"},
            status="pending",
        )
        pts = family(label, d)
        cert = is_minimally_terracini(pts, d)
        if cert.minimal is not True:
            cell.status = "counterexample"
            cell.counterexamples.append(
                _member_payload(cert, {"failure": "family member not minimal"})
            )
            cells.append(cell)
            continue
        nxt = cohomology(double_scheme(pts), d + 1)
        above = is_t1(pts, d + 1)
        below = is_minimally_terracini(pts, d - 1)
        ok = nxt.h1 == 0 and not above.t1 and below.minimal is not True
        cell.notes.append(
            f"h1(d+1)={nxt.h1}; t1(d+1)={above.t1}; minimal(d-1)={below.minimal}"
        )
        if ok:
            cell.status = "property_holds"
        else:
            cell.status = "counterexample"
            cell.counterexamples.append(
                {"failure": "twist uniqueness violated", "d": d, "family": label}
            )
        cells.append(cell)
    return cells


def _suite_de2(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or (5, 6, 7)
    chains_by_n = {
        2: [(1, 1)],
        3: [(1, 2), (2, 1), (1, 1, 1)],
        4: [(1, 3), (3, 1), (2, 2), (1, 1, 2), (1, 2, 1), (1, 1, 1, 1)],
    }
    for n, chains in chains_by_n.items():
        for d in d_values:
            if d < 5:
                continue
            x = 1 + ceil(n * d / 2)
            for chain in chains:
                if x < len(chain):
                    continue
                variants: list[tuple[str, list[int], tuple[int, ...]]] = []
                balanced = _balanced_allocation(chain, d, x)
                if balanced is not None:
                    variants.append(("balanced", balanced, ()))
                rng = Rng(derive_seed(cfg.seed, "de2", n, d, chain))
                variants.append(
                    ("random", _random_allocation(rng, len(chain), x), ())
                )
                if x - 1 >= len(chain):
                    variants.append(
                        (
                            "node_included",
                            _random_allocation(rng, len(chain), x - 1),
                            (1,),
                        )
                    )
                for tag, alloc, nodes in variants:
                    cell = CellResult(
                        cell={
                            "n": n,
                            "d": d,
                            "x": x,
                            "chain": list(chain),
                            "allocation": list(alloc),
                            "variant": tag,
                            "kind": "chain_consistency",
                        },
                        status="pending",
                    )
                    spec, pts, flags = reducible_rnc_points(
                        chain,
                        alloc,
                        derive_seed(cfg.seed, "de2", n, d, chain, tag),
                        cfg.primes[0],
                        include_nodes=nodes,
                    )
                    conds = reducible_rnc_necessary_conditions(spec, alloc, flags, d)
                    cert = is_minimally_terracini(pts, d)
                    # Positive lemma: enough smooth points on a spanning chain
                    # always give a Terracini set for d >= 4.
                    if (
                        all(flags)
                        and 2 * len(pts) >= d * n + 2
                        and cert.span == n
                        and not cert.terracini
                    ):
                        cell.counterexamples.append(
                            _member_payload(
                                cert,
                                {"failure": "chain with 2x >= nd+2 must be Terracini"},
                            )
                        )
                    if cert.minimal and not all(conds.values()):
                        cell.counterexamples.append(
                            _member_payload(
                                cert,
                                {
                                    "failure": "minimal member violating the chain conditions",
                                    "conditions": conds,
                                },
                            )
                        )
                    cell.notes.append(
                        f"minimal={cert.minimal} conditions={sum(conds.values())}/4"
                    )
                    cell.status = (
                        "counterexample" if cell.counterexamples else "property_holds"
                    )
                    if cert.minimal:
                        cell.members.append(_member_payload(cert))
                    cells.append(cell)
    return cells


def _balanced_allocation(
    chain: Sequence[int], d: int, x: int
) -> list[int] | None:
    """Final segments get (n_i d + 1)/2 points when that is an integer;
    the rest is spread over the middle.  None when infeasible."""
    s = len(chain)
    alloc = [0] * s
    finals = {0, s - 1}
    used = 0
    for i in finals:
        ni = chain[i]
        if (ni * d + 1) % 2:
            return None
        alloc[i] = (ni * d + 1) // 2
        used += alloc[i]
    middle = [i for i in range(s) if i not in finals]
    rest = x - used
    if rest < 0 or (middle and rest < 0) or (not middle and rest != 0):
        return None
    for k, i in enumerate(middle):
        share = rest // len(middle) + (1 if k < rest % len(middle) else 0)
        alloc[i] = share
    if any(a < 0 for a in alloc):
        return None
    if sum(alloc) != x:
        return None
    return alloc


def _suite_n2a1(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or (4, 5, 6, 7, 8)
    trials = cfg.trials if cfg.trials is not None else 300
    for d in d_values:
        for x in range(3, d + 1):
            cell = CellResult(
                cell={"n": 2, "d": d, "x": x, "kind": "empty_small"},
                status="pending",
            )
            _run_emptiness_cell(cfg, cell, 2, d, x, trials, require="minimal")
            cells.append(cell)

        cell = CellResult(
            cell={"n": 2, "d": d, "x": d + 1, "kind": "conic_member"},
            status="pending",
        )
        _, pts = rnc_points(2, d + 1, derive_seed(cfg.seed, "n2a1", d), cfg.primes[0])
        verify_minimal_member(pts, d, cell)
        cell.status = "member_verified" if not cell.counterexamples else "counterexample"
        cells.append(cell)

        cell = CellResult(
            cell={"n": 2, "d": d, "x": d + 1, "kind": "reducible_conic"},
            status="pending",
        )
        if d % 2:
            half = (d + 1) // 2
            _, pts, flags = reducible_rnc_points(
                (1, 1), (half, half), derive_seed(cfg.seed, "n2a1r", d), cfg.primes[0]
            )
            if verify_minimal_member(pts, d, cell, {"split": [half, half]}):
                cell.status = "member_verified"
            else:
                cell.status = "counterexample"
            # Uneven splits and node-through configurations must fail.
            _, bad, _f = reducible_rnc_points(
                (1, 1),
                (half + 1, half - 1),
                derive_seed(cfg.seed, "n2a1u", d),
                cfg.primes[0],
            )
            uneven = is_minimally_terracini(bad, d)
            if uneven.minimal:
                cell.counterexamples.append(
                    _member_payload(uneven, {"failure": "uneven split became minimal"})
                )
                cell.status = "counterexample"
        else:
            _, pts, _f = reducible_rnc_points(
                (1, 1),
                (d // 2 + 1, d // 2),
                derive_seed(cfg.seed, "n2a1e", d),
                cfg.primes[0],
            )
            cert = is_minimally_terracini(pts, d)
            if cert.minimal:
                cell.counterexamples.append(
                    _member_payload(
                        cert, {"failure": "even twist reducible conic became minimal"}
                    )
                )
                cell.status = "counterexample"
            else:
                cell.status = "property_holds"
                cell.notes.append("no reducible-conic member at even twist")
        cells.append(cell)

        if d >= 5:
            for x in range(d + 2, ceil(3 * d / 2 - 0.5) + 1):
                if 2 * x >= 3 * d:
                    continue
                cell = CellResult(
                    cell={"n": 2, "d": d, "x": x, "kind": "empty_gap"},
                    status="pending",
                )
                _run_emptiness_cell(cfg, cell, 2, d, x, trials, require="minimal")
                cells.append(cell)

        if d % 2 == 0 and d >= 6:
            cell = CellResult(
                cell={"n": 2, "d": d, "x": 3 * d // 2, "kind": "cubic_ci_member"},
                status="pending",
            )
            _, pts = plane_cubic_points(
                d, COMPLETE_INTERSECTION, derive_seed(cfg.seed, "n2e1", d), cfg.primes[0]
            )
            verify_minimal_member(pts, d, cell)
            cell.status = (
                "member_verified" if not cell.counterexamples else "counterexample"
            )
            cells.append(cell)
        if d % 2 == 1 and d >= 7:
            cell = CellResult(
                cell={"n": 2, "d": d, "x": (3 * d + 1) // 2, "kind": "cubic_free_member"},
                status="pending",
            )
            _, pts = plane_cubic_points(
                d, FREE_POINTS, derive_seed(cfg.seed, "n2e2", d), cfg.primes[0]
            )
            verify_minimal_member(pts, d, cell)
            cell.status = (
                "member_verified" if not cell.counterexamples else "counterexample"
            )
            cells.append(cell)
    return cells


def _suite_ooo1(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or (4, 5, 6, 7, 8)
    trials = cfg.trials if cfg.trials is not None else 200
    for d in d_values:
        for x in range(4, (3 * d + 1) // 2 + 1):
            cell = CellResult(
                cell={"n": 3, "d": d, "x": x, "kind": "empty_low_range"},
                status="pending",
            )
            _run_emptiness_cell(
                cfg, cell, 3, d, x, trials, require="minimal", classify_hits=True
            )
            cells.append(cell)
    return cells


def _suite_n31(cfg: SuiteConfig) -> list[CellResult]:
    d = cfg.d_values[0] if cfg.d_values else 7
    x = 1 + ceil(3 * d / 2)
    trials = cfg.trials if cfg.trials is not None else 500
    cells: list[CellResult] = []

    cell = CellResult(
        cell={"n": 3, "d": d, "x": x, "kind": "rnc_member"}, status="pending"
    )
    _, pts = rnc_points(3, x, derive_seed(cfg.seed, "n31"), cfg.primes[0])
    verify_minimal_member(pts, d, cell)
    cell.status = "member_verified" if not cell.counterexamples else "counterexample"
    cells.append(cell)

    cell = CellResult(
        cell={"n": 3, "d": d, "x": x, "kind": "non_rnc_search"}, status="pending"
    )
    non_rnc_variants = (0, 2, 3, 4, 5, 6)  # everything except the pure-rnc generator
    for trial in range(trials):
        tseed = derive_seed(cfg.seed, "n31", "search", trial)
        variant = non_rnc_variants[trial % len(non_rnc_variants)]

        def builder(p: int, _s=tseed, _v=variant) -> list[Point]:
            label, pts = structured_points(3, d, x, _v, _s, p)
            return pts

        emptiness_trial(builder, d, cfg.primes, cell, cfg.budget, require="minimal")
        cell.trials += 1
    cell.status = "empty_as_expected" if not cell.counterexamples else "counterexample"
    cells.append(cell)
    return cells


def _suite_ceo1(cfg: SuiteConfig) -> list[CellResult]:
    d = cfg.d_values[0] if cfg.d_values else 17
    trials = cfg.trials if cfg.trials is not None else 100
    cells: list[CellResult] = []

    x_member = 1 + ceil(3 * d / 2)
    cell = CellResult(
        cell={"n": 3, "d": d, "x": x_member, "kind": "rnc_member"}, status="pending"
    )
    _, pts = rnc_points(3, x_member, derive_seed(cfg.seed, "ceo1"), cfg.primes[0])
    verify_minimal_member(pts, d, cell)
    cell.status = "member_verified" if not cell.counterexamples else "counterexample"
    cells.append(cell)

    for x in range(x_member + 1, 2 * d):
        cell = CellResult(
            cell={"n": 3, "d": d, "x": x, "kind": "empty_gap"}, status="pending"
        )
        _run_emptiness_cell(cfg, cell, 3, d, x, trials, require="minimal")
        cells.append(cell)

    cell = CellResult(
        cell={"n": 3, "d": d, "x": 2 * d, "kind": "elliptic_boundary"},
        status="pending",
    )
    if d % 2:
        neighbor = d - 1
        cell.notes.append(
            f"elliptic construction needs an even twist; out of range at d={d}, "
            f"using the even neighbor d={neighbor}"
        )
        _, pts = elliptic_quartic_points(
            neighbor, derive_seed(cfg.seed, "ceo1-ell"), cfg.primes[0]
        )
        ok = verify_minimal_member(pts, neighbor, cell, {"d": neighbor})
        cell.status = "out_of_range_noted" if ok else "counterexample"
    else:
        _, pts = elliptic_quartic_points(d, derive_seed(cfg.seed, "ceo1-ell"), cfg.primes[0])
        verify_minimal_member(pts, d, cell)
        cell.status = "member_verified" if not cell.counterexamples else "counterexample"
    cells.append(cell)
    return cells


def _suite_ex4d(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or (6, 8)
    for d in d_values:
        if d % 2:
            continue
        cell = CellResult(
            cell={"n": 3, "d": d, "x": 2 * d, "kind": "elliptic_member"},
            status="pending",
        )
        spec, pts = elliptic_quartic_points(d, derive_seed(cfg.seed, "ex4d", d), cfg.primes[0])
        cell.retry_trail.append({"family": "elliptic", "retries": spec.data["retries"]})
        ok = verify_minimal_member(
            pts, d, cell, {"curve_side_h1": curve_side_oracle(spec, 2 * d, d)}
        )
        if ok:
            h1 = cell.members[-1]["certificate"]["h1"]
            if h1 != 1:
                cell.counterexamples.append(
                    {"failure": "elliptic member must have h1 exactly 1", "h1": h1}
                )
        cell.status = "member_verified" if not cell.counterexamples else "counterexample"
        cells.append(cell)

        cell2 = CellResult(
            cell={"n": 3, "d": d, "kind": "below_threshold"}, status="pending"
        )
        for x in (2 * d - 3, 2 * d - 1):
            _, sub = elliptic_quartic_points(
                d, derive_seed(cfg.seed, "ex4d-sub", d, x), cfg.primes[0], count=x
            )
            h1 = cohomology(double_scheme(sub), d).h1
            if h1 != 0:
                cell2.counterexamples.append(
                    {"failure": "sub-threshold elliptic sample with h1 > 0", "x": x, "h1": h1}
                )
            else:
                cell2.refutations["h1_zero"] = cell2.refutations.get("h1_zero", 0) + 1
            cell2.trials += 1
        cell2.status = "property_holds" if not cell2.counterexamples else "counterexample"
        cells.append(cell2)
    return cells


def _suite_oo1(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or (4, 5, 6)
    trials = cfg.trials if cfg.trials is not None else 50
    for n in (2, 3):
        for d in d_values:
            rho = critical_count_bound(n, d)
            cell = CellResult(
                cell={"n": n, "d": d, "x": rho + 1, "kind": "empty_above_rho"},
                status="pending",
            )
            _run_emptiness_cell(cfg, cell, n, d, rho + 1, trials, require="minimal")
            cells.append(cell)
            if comb(n + d, n) % (n + 1) == 0:
                x = 1 + comb(n + d, n) // (n + 1)
                cell = CellResult(
                    cell={"n": n, "d": d, "x": x, "kind": "empty_divisible_boundary"},
                    status="pending",
                )
                _run_emptiness_cell(cfg, cell, n, d, x, trials, require="minimal")
                cells.append(cell)
    return cells


def _suite_prepa1(cfg: SuiteConfig) -> list[CellResult]:
    cells: list[CellResult] = []
    d_values = cfg.d_values or (3, 4, 5)
    trials = cfg.trials if cfg.trials is not None else 40
    for d in d_values:
        cell = CellResult(
            cell={"n": 3, "d": d, "kind": "concision"}, status="pending"
        )
        for trial in range(trials):
            rng = Rng(derive_seed(cfg.seed, "prepa1", d, trial))
            count = 3 + rng.below(6)
            flavor = trial % 3
            prime = cfg.primes[0]
            if flavor == 0:
                flat = [
                    Point((1, rng.field(prime), rng.field(prime), 0), prime)
                    for _ in range(count)
                ]
            elif flavor == 1:
                ts = rng.distinct(prime, count)
                flat = [Point((1, t, 0, 0), prime) for t in ts]
            else:
                ts = rng.distinct(prime, count)
                flat = [Point((1, t, t * t % prime, 0), prime) for t in ts]
            a = random_transform(3, prime, rng)
            pts = list(
                dict.fromkeys(
                    Point(apply_transform(a, q.coords, prime), prime) for q in flat
                )
            )
            z = double_scheme(pts)
            ambient = cohomology(z, d).h1
            inside = cohomology(restrict_to_span(z), d).h1
            cell.trials += 1
            if (ambient > 0) != (inside > 0):
                cell.counterexamples.append(
                    {
                        "failure": "concision violated",
                        "ambient_h1": ambient,
                        "in_span_h1": inside,
                        "points": [list(q.coords) for q in pts],
                    }
                )
            else:
                key = "h1_positive" if ambient > 0 else "h1_zero"
                cell.refutations[key] = cell.refutations.get(key, 0) + 1
        cell.status = "property_holds" if not cell.counterexamples else "counterexample"
        cells.append(cell)
    return cells


SUITES: dict[str, tuple[Callable[[SuiteConfig], list[CellResult]], str]] = {
    "ai0": (_suite_ai0, "members at every cardinality above the threshold; nothing below"),
    "43": (_suite_43, "no Terracini sets below the cardinality threshold"),
    "a9.0": (_suite_a90, "rational-normal-curve members at the minimal cardinality"),
    "rob1": (_suite_rob1, "the twist of a minimal member is unique and maximal"),
    "de2": (_suite_de2, "chain-supported members match the structural conditions"),
    "n2a1": (_suite_n2a1, "plane classification: conic members, empty gaps, boundary members"),
    "ooo1": (_suite_ooo1, "no minimal members in the low range of 3-space; hits classified"),
    "n3.1": (_suite_n31, "first non-empty cardinality in 3-space is the curve case"),
    "ceo1": (_suite_ceo1, "the gap between the curve case and the elliptic boundary"),
    "ex4d": (_suite_ex4d, "elliptic members at twice the twist; nothing just below"),
    "oo1": (_suite_oo1, "no minimal members above the counting bound"),
    "prepa1": (_suite_prepa1, "dependence is intrinsic to the span of the support"),
}


def run_suite(cfg: SuiteConfig, raise_on_counterexample: bool = False) -> SuiteReport:
    if cfg.suite not in SUITES:
        raise ValueError(
            f"unknown suite {cfg.suite!r}; available: {', '.join(sorted(SUITES))}"
        )
    runner, _ = SUITES[cfg.suite]
    start = time.time()
    cells = runner(cfg)
    report = SuiteReport(
        suite=cfg.suite, config=cfg, cells=cells, elapsed_seconds=time.time() - start
    )
    if raise_on_counterexample:
        report.raise_on_counterexample()
    return report


def report_to_csv_rows(report: SuiteReport) -> list[dict]:
    rows = []
    for cell in report.cells:
        row = {
            "suite": report.suite,
            "status": cell.status,
            "trials": cell.trials,
            "members": len(cell.members),
            "counterexamples": len(cell.counterexamples),
            "refutations": ";".join(
                f"{k}={v}" for k, v in sorted(cell.refutations.items())
            ),
        }
        for key, value in cell.cell.items():
            row[key] = json.dumps(value) if isinstance(value, (list, dict)) else value
        rows.append(row)
    return rows
