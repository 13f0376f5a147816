"""Exact-arithmetic toolkit for Terracini loci of point sets in P^n.

A finite set S spanning P^n is Terracini for the degree-d system when its
double points impose dependent conditions while some degree-d form is
singular along all of S; it is minimally Terracini when every proper
subset imposes independent conditions.  This package decides membership
over large prime fields, extracts critical subschemes certifying the
dependence, classifies the low-degree witness curves behind it, generates
the structured families realizing the extremal cases, and re-runs the
structural statements at desk scale with machine-readable certificates.
"""

from .linalg import (
    DEFAULT_PRIME,
    DEFAULT_PRIMES,
    SECOND_PRIME,
    Matrix,
    MultiPrimeRank,
    RankProfile,
    multi_prime_rank,
    rank,
    rank_and_left_kernel,
)
from .projective import (
    Direction,
    Hypersurface,
    MonomialBasis,
    Point,
    evaluate_with_gradient,
    monomial_count,
    span_dim,
)
from .schemes import (
    Component,
    ZeroDimScheme,
    double_scheme,
    intersection_degree_hypersurface,
    intersection_degree_line,
    residual,
    scheme_from_json,
    scheme_to_json,
)
from .cohomology import (
    CohomologyReport,
    cohomology,
    cohomology_multi,
    condition_rows,
)
from .membership import (
    MembershipCertificate,
    check_member_bounds,
    critical_count_bound,
    is_minimally_terracini,
    is_t1,
    is_terracini,
)
from .critical import CriticalScheme, find_critical, kernel_to_curvilinear, minimize
from .constructions import (
    CurveSpec,
    ai0_witness,
    curve_side_oracle,
    elliptic_quartic_points,
    plane_cubic_points,
    random_points,
    reducible_rnc_points,
    rnc_points,
)
from .witness import Witness, classify, find_conic_witness, find_line_witness
from .suites import SuiteConfig, SuiteReport, run_suite

__version__ = "0.1.0"
