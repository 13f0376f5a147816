"""Extraction and minimization of critical schemes.

When h1(I_2S(d)) > 0 some left-kernel vector of the condition matrix
exhibits a dependence among the double-point conditions.  Reading the
vector blockwise (one block of n+1 partial rows per point) turns it into
a curvilinear subscheme of 2S: a zero block omits the point, a block
proportional to the point's own coordinates is the Euler combination and
contributes a simple point, and any other block contributes a jet along
the block direction taken modulo the Euler direction.  The directional
rows of that subscheme sum to the dependence, so its h1 stays positive.

Minimization then walks down maximal proper subschemes (drop a simple
point, or shrink a jet to its reduction) while h1 stays positive.  At the
fixpoint every proper subscheme has h1 = 0, which forces h1 = 1: dropping
one degree can lower h1 by at most one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cohomology import cohomology, condition_rows, left_kernel
from .linalg import matvec_mod
from .projective import Point, reduce_mod_point
from .schemes import (
    JET,
    SIMPLE,
    Component,
    ZeroDimScheme,
    double_scheme,
    jet,
    simple,
)


class ZeroKernelVector(ValueError):
    pass


class NotPositiveH1(ValueError):
    pass


@dataclass(frozen=True)
class CriticalScheme:
    """A minimal curvilinear subscheme of 2S with dependent conditions.

    Invariants: every component has degree <= 2, h1 is exactly 1, and all
    maximal proper subschemes have h1 = 0.
    """

    scheme: ZeroDimScheme
    d: int
    h1: int
    kernel_vector: tuple[int, ...]

    def to_json(self) -> dict:
        from .schemes import scheme_to_json

        return {
            "d": self.d,
            "h1": self.h1,
            "scheme": scheme_to_json(self.scheme),
            "kernel_vector": list(self.kernel_vector),
        }


def kernel_to_curvilinear(
    points: Sequence[Point], d: int, lam: Sequence[int]
) -> ZeroDimScheme:
    """Curvilinear subscheme of 2S carried by a left-kernel vector."""
    z2 = double_scheme(list(points))
    m = condition_rows(z2, d)
    vec = [int(v) % m.p for v in lam]
    if len(vec) != m.rows:
        raise ValueError("kernel vector length does not match the conditions")
    if not any(vec):
        raise ZeroKernelVector("kernel vector is zero")
    if matvec_mod(m.entries.T, vec, m.p).any():
        raise ValueError("vector is not in the left kernel")
    n = z2.n
    comps: list[Component] = []
    for k, q in enumerate(points):
        block = vec[k * (n + 1) : (k + 1) * (n + 1)]
        if not any(block):
            continue
        direction = reduce_mod_point(block, q)
        if direction is None:
            comps.append(simple(q))
        else:
            comps.append(jet(q, direction))
    return ZeroDimScheme(n, tuple(comps))


def _maximal_proper_subschemes(z: ZeroDimScheme):
    for idx, comp in enumerate(z.components):
        if comp.kind == JET:
            yield z.replace(idx, simple(comp.base))
        elif comp.kind == SIMPLE:
            yield z.without(idx)
        else:
            raise ValueError("minimization needs components of degree <= 2")


def minimize(z: ZeroDimScheme, d: int) -> CriticalScheme:
    """Descend through subschemes with h1 > 0 until none is left."""
    h1 = cohomology(z, d).h1
    if h1 < 1:
        raise NotPositiveH1("scheme already imposes independent conditions")
    current = z
    while True:
        for sub in _maximal_proper_subschemes(current):
            if sub.degree and cohomology(sub, d).h1 > 0:
                current = sub
                break
        else:
            break
    final = cohomology(current, d).h1
    if final != 1:
        raise AssertionError(
            f"critical scheme ended with h1 = {final}, expected exactly 1"
        )
    return CriticalScheme(scheme=current, d=d, h1=final, kernel_vector=())


def find_critical(
    points: Sequence[Point], d: int, expect_full_support: bool = False
) -> CriticalScheme:
    """Kernel vector -> curvilinear subscheme -> minimization.

    With expect_full_support=True (caller knows S is minimally Terracini)
    the support of the result is asserted to be all of S.
    """
    prof = left_kernel(double_scheme(list(points)), d)
    if not prof.left_kernel_basis:
        raise NotPositiveH1("double scheme imposes independent conditions")
    lam = prof.left_kernel_basis[0]
    z = kernel_to_curvilinear(points, d, lam)
    if cohomology(z, d).h1 < 1:
        raise AssertionError("kernel subscheme lost its dependence")
    crit = minimize(z, d)
    if expect_full_support and set(crit.scheme.support) != set(points):
        raise AssertionError(
            "critical scheme of a minimal member must be supported everywhere"
        )
    return CriticalScheme(
        scheme=crit.scheme, d=d, h1=crit.h1, kernel_vector=tuple(int(v) for v in lam)
    )
