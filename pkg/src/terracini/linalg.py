"""Dense exact linear algebra over prime fields.

Matrices are stored row-major as int64 numpy arrays with entries reduced
mod p.  With p < 2^31 every product of two residues fits in int64, so
Gaussian elimination needs one reduction per arithmetic step and no big
integers.  Ranks and left kernels computed here drive every cohomology
number in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

DEFAULT_PRIME = 2**31 - 1
SECOND_PRIME = 2147483629
DEFAULT_PRIMES = (DEFAULT_PRIME, SECOND_PRIME)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for 64-bit inputs."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inv_mod(a: int, p: int) -> int:
    return pow(a % p, -1, p)


def dot_mod(u, v, p: int) -> int:
    """Exact dot product mod p.  Goes through Python ints because summing
    int64 products of two ~2^31 residues overflows after two terms."""
    uu = np.asarray(u, dtype=object)
    vv = np.asarray(v, dtype=object)
    return int((uu @ vv) % p)


def matvec_mod(a, v, p: int) -> np.ndarray:
    aa = np.asarray(a, dtype=object)
    vv = np.asarray(v, dtype=object)
    return ((aa @ vv) % p).astype(np.int64)


def matmul_mod(a, b, p: int) -> np.ndarray:
    aa = np.asarray(a, dtype=object)
    bb = np.asarray(b, dtype=object)
    return ((aa @ bb) % p).astype(np.int64)


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a mod p (odd prime), or None if a is a non-residue.

    Tonelli-Shanks; the p % 4 == 3 shortcut covers the default prime.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks for p % 4 == 1.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over F_p, entries row-major and reduced."""

    rows: int
    cols: int
    p: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        a = np.asarray(self.entries, dtype=np.int64) % self.p
        if a.shape != (self.rows, self.cols):
            raise ValueError(f"entry block {a.shape} != ({self.rows}, {self.cols})")
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "Matrix":
        a = np.asarray(rows, dtype=np.int64)
        if a.ndim != 2:
            a = a.reshape(len(rows), -1)
        return cls(a.shape[0], a.shape[1], p, a)

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls(n, n, p, np.eye(n, dtype=np.int64))


@dataclass(frozen=True)
class RankProfile:
    """Rank plus a basis of the left kernel {v : v^T M = 0}."""

    rank: int
    left_kernel_basis: tuple[tuple[int, ...], ...]


def _forward_eliminate(work: np.ndarray, ncols_pivot: int, p: int) -> int:
    """In-place forward elimination; pivots restricted to the first
    ncols_pivot columns.  Pivot choice (first column, then lowest row index)
    is fixed so results are deterministic.  Returns the rank."""
    m = work.shape[0]
    r = 0
    for c in range(ncols_pivot):
        col = work[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            work[[r, piv]] = work[[piv, r]]
        inv = inv_mod(int(work[r, c]), p)
        work[r] = work[r] * inv % p
        below = work[r + 1 :, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            rows = r + 1 + hit
            work[rows] = (work[rows] - np.outer(work[rows, c], work[r])) % p
        r += 1
        if r == m:
            break
    return r


def rank_and_left_kernel(m: Matrix) -> RankProfile:
    """Gaussian elimination over F_p returning rank and left-kernel basis.

    The matrix is augmented with an identity block; rows whose original part
    vanishes after elimination carry the kernel coefficients.  Basis order
    follows the elimination, so "first kernel vector" is well defined.
    """
    work = np.concatenate(
        [m.entries.copy(), np.eye(m.rows, dtype=np.int64)], axis=1
    )
    r = _forward_eliminate(work, m.cols, m.p)
    kernel = tuple(tuple(int(x) for x in row[m.cols :]) for row in work[r:])
    return RankProfile(rank=r, left_kernel_basis=kernel)


def rank(m: Matrix) -> int:
    work = m.entries.copy()
    return _forward_eliminate(work, m.cols, m.p)


def right_kernel(m: Matrix) -> tuple[tuple[int, ...], ...]:
    """Basis of {v : M v = 0}, via the left kernel of the transpose."""
    mt = Matrix(m.cols, m.rows, m.p, m.entries.T.copy())
    return rank_and_left_kernel(mt).left_kernel_basis


@dataclass(frozen=True)
class MultiPrimeRank:
    """Maximum rank across primes, with the per-prime evidence.

    A disagreement means some prime saw a rank drop (a "bad prime" for the
    configuration); callers surface the flag in their reports rather than
    aborting, since the maximum is the generic value.
    """

    rank: int
    per_prime: tuple[tuple[int, int], ...]

    @property
    def disagree(self) -> bool:
        ranks = {r for _, r in self.per_prime}
        return len(ranks) > 1


def multi_prime_rank(
    m_builder: Callable[[int], Matrix], primes: Sequence[int]
) -> MultiPrimeRank:
    """Rank of a matrix recipe evaluated independently at several primes.

    The recipe rebuilds the matrix per prime (sampling coordinates in that
    field), so agreement across primes is evidence the rank is the generic
    one and not an artifact of one specialization.
    """
    if len(set(primes)) < 2:
        raise ValueError("need at least two distinct primes")
    pairs = []
    for p in primes:
        mat = m_builder(p)
        if mat.p != p:
            raise ValueError("recipe returned a matrix over the wrong prime")
        pairs.append((p, rank(mat)))
    best = max(r for _, r in pairs)
    return MultiPrimeRank(rank=best, per_prime=tuple(pairs))
