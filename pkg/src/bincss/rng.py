"""SplitMix64: the only source of randomness in the package.

The generator is fixed (Steele, Lea and Flood's SplitMix64 finalizer with its
published constants) so that seeded instances are bit-identical across
platforms and languages.  Probabilities are exact rationals; a draw ``x`` is
a success iff ``x * den < num * 2**64``.
"""

from __future__ import annotations

from fractions import Fraction

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB
_M64 = (1 << 64) - 1


def as_probability(p) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float; rejects values outside [0, 1]."""
    if isinstance(p, float):
        q = Fraction(repr(p))
    else:
        q = Fraction(p)
    if not 0 <= q <= 1:
        raise ValueError(f"probability {p!r} outside [0, 1]")
    return q


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _M64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX_1) & _M64
        z = ((z ^ (z >> 27)) * MIX_2) & _M64
        return z ^ (z >> 31)

    def bit(self) -> int:
        return self.next_u64() >> 63

    def bernoulli(self, p: Fraction) -> int:
        return int(self.next_u64() * p.denominator < p.numerator << 64)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection (no modulo bias)."""
        if n < 1:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]
