"""Slow, independent re-computations used to cross-check the main path.

Nothing here shares code with the production matrix builder: monomials are
enumerated in ascending lex order (the main path uses descending), the
matrix is assembled column by column with naive repeated multiplication,
and the elimination sweeps columns right to left picking the last usable
pivot row.  The point is independence, not speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .schemes import DOUBLE, JET, SIMPLE, ZeroDimScheme


@dataclass(frozen=True)
class OracleResult:
    quantity: str
    oracle_value: object
    main_value: object

    @property
    def agree(self) -> bool:
        return self.oracle_value == self.main_value


def _monomials_ascending(nvars: int, total: int) -> list[tuple[int, ...]]:
    if nvars == 1:
        return [(total,)]
    out = []
    for e in range(total + 1):
        for rest in _monomials_ascending(nvars - 1, total - e):
            out.append((e,) + rest)
    return out


def _value(exp: tuple[int, ...], coords: tuple[int, ...], p: int) -> int:
    acc = 1
    for e, c in zip(exp, coords):
        for _ in range(e):
            acc = acc * c % p
    return acc


def _partial(exp: tuple[int, ...], j: int, coords: tuple[int, ...], p: int) -> int:
    if exp[j] == 0:
        return 0
    lowered = list(exp)
    lowered[j] -= 1
    return exp[j] * _value(tuple(lowered), coords, p) % p


def _conditions(z: ZeroDimScheme) -> list[tuple[str, tuple, tuple | None]]:
    conds: list[tuple[str, tuple, tuple | None]] = []
    for compo in z.components:
        base = compo.base.coords
        if compo.kind == SIMPLE:
            conds.append(("eval", base, None))
        elif compo.kind == JET:
            conds.append(("eval", base, None))
            conds.append(("dir", base, compo.direction.coords))
        elif compo.kind == DOUBLE:
            for j in range(z.n + 1):
                conds.append(("partial", base, (j,)))
    return conds


def _entry(cond, exp, p: int) -> int:
    kind, base, extra = cond
    if kind == "eval":
        return _value(exp, base, p)
    if kind == "partial":
        return _partial(exp, extra[0], base, p)
    acc = 0
    for j, vj in enumerate(extra):
        acc = (acc + vj * _partial(exp, j, base, p)) % p
    return acc


def _rank_last_pivot(matrix: list[list[int]], p: int) -> int:
    """Row reduction sweeping columns right to left; pivot = last nonzero
    row still unused.  Pure Python integers throughout."""
    if not matrix:
        return 0
    nrows, ncols = len(matrix), len(matrix[0])
    used = [False] * nrows
    rank = 0
    for col in range(ncols - 1, -1, -1):
        pivot = None
        for i in range(nrows - 1, -1, -1):
            if not used[i] and matrix[i][col] % p != 0:
                pivot = i
                break
        if pivot is None:
            continue
        used[pivot] = True
        rank += 1
        inv = pow(matrix[pivot][col], -1, p)
        prow = [x * inv % p for x in matrix[pivot]]
        matrix[pivot] = prow
        for i in range(nrows):
            if i != pivot and matrix[i][col] % p != 0:
                f = matrix[i][col] % p
                matrix[i] = [(a - f * b) % p for a, b in zip(matrix[i], prow)]
    return rank


def h_oracle(z: ZeroDimScheme, d: int) -> tuple[int, int]:
    """(h0, h1) for z twisted by d, along the independent path."""
    p = z.p
    n = z.n
    exps = _monomials_ascending(n + 1, d)
    conds = _conditions(z)
    ncols = len(exps)
    # Column-by-column assembly.
    columns = [[_entry(c, exp, p) for c in conds] for exp in exps]
    matrix = [[columns[j][i] for j in range(ncols)] for i in range(len(conds))]
    r = _rank_last_pivot(matrix, p)
    return comb(n + d, n) - r, len(conds) - r


def genus0_h1(e: int) -> int:
    """h1 of a degree-e line bundle on a smooth rational curve."""
    return max(0, -e - 1)


def genus1_h1(e: int) -> int:
    """h1 of a degree-e line bundle on a smooth genus-1 curve.

    The e = 0 entry assumes the trivial class, which is how the elliptic
    generators arrange their divisors.
    """
    if e < 0:
        return -e
    if e == 0:
        return 1
    return 0


def curve_h1_oracle(genus: int, e: int) -> int:
    if genus == 0:
        return genus0_h1(e)
    if genus == 1:
        return genus1_h1(e)
    raise ValueError("only rational and elliptic curves are supported")
