"""Deterministic seeded randomness.

Every randomized search in this package draws from a SplitMix64 stream so
that reports are bit-reproducible across Python versions and machines
(stdlib ``random`` makes no cross-version guarantee for all methods).
Sub-streams are derived by hashing a label into the seed, which keeps
per-trial results independent of scheduling order.
"""

from __future__ import annotations

import hashlib

_MASK64 = (1 << 64) - 1


def derive_seed(master: int, *labels: object) -> int:
    """Derive a child seed from a master seed and a label path.

    Uses SHA-256 over a canonical string so that trial seeds depend only on
    (master seed, labels), never on execution order or worker layout.
    """
    text = repr((int(master),) + tuple(str(x) for x in labels))
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


class Rng:
    """SplitMix64 pseudo-random stream with the few draws we need."""

    def __init__(self, seed: int):
        self._seed = seed & _MASK64
        self._state = seed & _MASK64

    def _next64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            v = self._next64()
            if v <= limit:
                return v % n

    def field(self, p: int) -> int:
        """Uniform residue in [0, p)."""
        return self.below(p)

    def nonzero(self, p: int) -> int:
        """Uniform residue in [1, p)."""
        return 1 + self.below(p - 1)

    def distinct(self, p: int, k: int, avoid: set[int] | None = None) -> list[int]:
        """k distinct residues mod p, optionally avoiding a given set."""
        seen: set[int] = set(avoid) if avoid else set()
        out: list[int] = []
        while len(out) < k:
            v = self.below(p)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out

    def spawn(self, *labels: object) -> "Rng":
        """Independent child stream; depends only on the seed and labels."""
        return Rng(derive_seed(self._seed, *labels))
