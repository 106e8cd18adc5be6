"""Instance generators: the CSS lower-bound family, the negated identity, and seeded random matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bitmat import BitMatrix, bool_mul, gf2_mul, gf2_rank, hamming_dist, identity, make
from .rng import SplitMix64, as_probability

MAX_NEGID_K = 8


@dataclass(frozen=True)
class LowerBoundInstance:
    k: int
    n: int
    p: int
    q: int
    L: BitMatrix
    R: BitMatrix
    A: BitMatrix


@dataclass(frozen=True)
class NegIdInstance:
    k: int
    n: int
    A: BitMatrix
    U: BitMatrix
    V: BitMatrix


def _check_lb_params(k: int, n: int) -> tuple[int, int]:
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 1 or n % k or n % (2**k - 1):
        raise ValueError(f"n = {n} must be a positive multiple of both k = {k} and 2^k - 1 = {2**k - 1}")
    return n // k, n // (2**k - 1)


def lower_bound_instance(k: int, n: int) -> LowerBoundInstance:
    """``A = L R + I_n`` where L has disjoint blocks of ``p = n/k`` ones and
    R lists every nonzero ``k``-bit vector ``q = n/(2^k-1)`` times.

    The binary representation of ``t`` puts its most significant bit in row 0
    of R, so ``b_1 = (0, ..., 0, 1)``.
    """
    p, q = _check_lb_params(k, n)
    L = BitMatrix(n, k, tuple(1 << (i // p) for i in range(n)))
    R_rows = []
    for r in range(k):
        row = 0
        for t in range(1, 2**k):
            if (t >> (k - 1 - r)) & 1:
                for c in range((t - 1) * q, t * q):
                    row |= 1 << c
        R_rows.append(row)
    R = BitMatrix(k, n, tuple(R_rows))
    LR = gf2_mul(L, R)
    assert LR == bool_mul(L, R)
    A = LR ^ identity(n)
    assert hamming_dist(A, LR) == n
    assert gf2_rank(LR) == k
    return LowerBoundInstance(k, n, p, q, L, R, A)


def expected_css_error_lb(k: int, n: int) -> int:
    """Closed-form CSS error ``n + q k 2^(k-1) - 2k`` on the lower-bound instance.

    Derived for large ``n`` (block size ``p > 2k + 3``); small instances can do better.
    """
    _, q = _check_lb_params(k, n)
    return n + q * k * 2 ** (k - 1) - 2 * k


def negated_identity(k: int) -> NegIdInstance:
    """The ``2^(k/2)``-square complement of the identity with an exact Boolean rank-``k`` factorization.

    Row/column index ``alpha`` is read as a ``k/2``-bit string with ``alpha_i`` = bit ``i``.
    Factor column ``2i + b`` stands for the pair ``(i, b)``.
    """
    if k < 2 or k % 2 or k > MAX_NEGID_K:
        raise ValueError(f"k must be even with 2 <= k <= {MAX_NEGID_K}, got {k}")
    h = k // 2
    n = 1 << h
    A = BitMatrix(n, n, tuple(((1 << n) - 1) ^ (1 << a) for a in range(n)))
    U_rows = []
    for alpha in range(n):
        row = 0
        for i in range(h):
            b = (alpha >> i) & 1
            row |= 1 << (2 * i + b)
        U_rows.append(row)
    U = BitMatrix(n, k, tuple(U_rows))
    V_rows = []
    for i in range(h):
        for b in (0, 1):
            V_rows.append(sum(1 << beta for beta in range(n) if ((beta >> i) & 1) != b))
    V = BitMatrix(k, n, tuple(V_rows))
    assert bool_mul(U, V) == A
    return NegIdInstance(k, n, A, U, V)


def random_bits(rng: SplitMix64, d: int, n: int) -> BitMatrix:
    return make(d, n, [rng.bit() for _ in range(d * n)])


def random_bernoulli(d: int, n: int, p, seed: int) -> BitMatrix:
    """i.i.d. entries drawn row-major with success probability ``p`` (an exact rational)."""
    prob = as_probability(p)
    rng = SplitMix64(seed)
    return make(d, n, [rng.bernoulli(prob) for _ in range(d * n)])


def planted(d: int, n: int, k: int, semiring: str, flip_prob, seed: int) -> tuple[BitMatrix, BitMatrix, BitMatrix]:
    """Product of uniform random factors with independent entry flips.

    Draw order from one stream: U0 row-major, V0 row-major, then one flip
    decision per entry of A row-major.
    """
    prob = as_probability(flip_prob)
    if not 1 <= k <= min(d, n):
        raise ValueError(f"k must lie in [1, min(d, n)] = [1, {min(d, n)}]")
    if semiring not in ("gf2", "boolean"):
        raise ValueError(f"unknown semiring {semiring!r}")
    rng = SplitMix64(seed)
    U0 = random_bits(rng, d, k)
    V0 = random_bits(rng, k, n)
    M = gf2_mul(U0, V0) if semiring == "gf2" else bool_mul(U0, V0)
    noise = make(d, n, [rng.bernoulli(prob) for _ in range(d * n)])
    return M ^ noise, U0, V0


DENSITIES = tuple(Fraction(i, 10) for i in range(1, 6))
