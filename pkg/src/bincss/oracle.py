"""Brute-force optimal binary factorizations: the ground truth for every ratio check.

Basis candidates ``U`` are enumerated as non-decreasing ``k``-tuples of column
vectors from ``{0,1}^d`` (zero and repeated columns allowed), in lexicographic
order.  Per-column costs come from a dense ``2^d x n`` distance table, a
computation path independent of the bitset kernels in :mod:`bitmat`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Literal

import numpy as np

from .bitmat import BitMatrix, from_columns, gf2_mul, bool_mul, hamming_dist
from .css_gf2 import gf2_best_coefficients
from .errors import check_budget
from .gcss_bool import bool_best_coefficients
from .search import DEFAULT_BUDGET

Semiring = Literal["gf2", "boolean"]

MAX_TABLE_ROWS = 24
RANK1_CHUNK = 1 << 16


@dataclass(frozen=True)
class Factorization:
    semiring: Semiring
    U: BitMatrix
    V: BitMatrix
    error: int


def opt_search_cost(d: int, n: int, k: int) -> int:
    return comb((1 << d) + k - 1, k) * (1 << k) * n


def _distance_table(A: BitMatrix) -> np.ndarray:
    words = np.arange(1 << A.rows, dtype=np.int64)
    cols = np.array(A.columns, dtype=np.int64)
    return np.bitwise_count(words[:, None] ^ cols[None, :]).astype(np.int64)


def _combine(prefix: tuple[int, ...], semiring: Semiring) -> list[int]:
    table = [0]
    for u in prefix:
        if semiring == "gf2":
            table += [t ^ u for t in table]
        else:
            table += [t | u for t in table]
    return table


def _exhaustive_opt(A: BitMatrix, k: int, semiring: Semiring, budget: int) -> Factorization:
    if k < 1:
        raise ValueError("k must be >= 1")
    if A.rows > MAX_TABLE_ROWS:
        raise ValueError(f"d = {A.rows} too large for the exhaustive oracle")
    check_budget(f"opt_{semiring}", opt_search_cost(A.rows, A.cols, k), budget)
    N = 1 << A.rows
    dist = _distance_table(A)
    words = np.arange(N, dtype=np.int64)
    best_err = None
    best_U = None
    for prefix in combinations_with_replacement(range(N), k - 1):
        combos = _combine(prefix, semiring)
        base = dist[combos].min(axis=0)
        lo = prefix[-1] if prefix else 0
        last = words[lo:]
        cost = np.broadcast_to(base, (len(last), A.cols))
        for p in combos:
            idx = (p ^ last) if semiring == "gf2" else (p | last)
            cost = np.minimum(cost, dist[idx])
        totals = cost.sum(axis=1)
        at = int(np.argmin(totals))
        err = int(totals[at])
        if best_err is None or err < best_err:
            best_err = err
            best_U = prefix + (lo + at,)
    U = from_columns(A.rows, best_U)
    if semiring == "gf2":
        V, err = gf2_best_coefficients(U, A)
        assert hamming_dist(A, gf2_mul(U, V)) == err
    else:
        V, err = bool_best_coefficients(U, A)
        assert hamming_dist(A, bool_mul(U, V)) == err
    assert err == best_err
    return Factorization(semiring, U, V, err)


def opt_gf2(A: BitMatrix, k: int, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Globally optimal rank-``k`` factorization over GF(2)."""
    return _exhaustive_opt(A, k, "gf2", budget)


def opt_bool(A: BitMatrix, k: int, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Globally optimal rank-``k`` factorization over the Boolean semiring."""
    return _exhaustive_opt(A, k, "boolean", budget)


def opt_rank1(A: BitMatrix, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Optimal ``u v^T`` by enumerating ``u``; ``v_j = 1`` iff that strictly lowers column ``j``'s cost."""
    d, n = A.shape
    if d > MAX_TABLE_ROWS:
        raise ValueError(f"d = {d} exceeds the rank-1 enumeration limit {MAX_TABLE_ROWS}")
    check_budget("opt_rank1", (1 << d) * n, budget)
    cols = np.array(A.columns, dtype=np.int64)
    weights = np.bitwise_count(cols).astype(np.int64)
    best_err = None
    best_u = 0
    for start in range(0, 1 << d, RANK1_CHUNK):
        us = np.arange(start, min(start + RANK1_CHUNK, 1 << d), dtype=np.int64)
        flipped = np.bitwise_count(us[:, None] ^ cols[None, :]).astype(np.int64)
        totals = np.minimum(flipped, weights[None, :]).sum(axis=1)
        at = int(np.argmin(totals))
        if best_err is None or int(totals[at]) < best_err:
            best_err = int(totals[at])
            best_u = start + at
    v = [int((a ^ best_u).bit_count() < a.bit_count()) for a in A.columns]
    U = from_columns(d, [best_u])
    V = BitMatrix(1, n, (sum(b << j for j, b in enumerate(v)),))
    assert hamming_dist(A, gf2_mul(U, V)) == best_err
    return Factorization("gf2", U, V, best_err)


def rank1_best_column(A: BitMatrix) -> tuple[int, BitMatrix, int]:
    """Best rank-1 approximation whose left factor is a column of ``A``.

    Returns ``(column index, v as a 1 x n matrix, error)``; lowest index on ties.
    """
    best = None
    for idx, u in enumerate(A.columns):
        err = 0
        vbits = 0
        for j, a in enumerate(A.columns):
            w, f = a.bit_count(), (a ^ u).bit_count()
            if f < w:
                vbits |= 1 << j
                err += f
            else:
                err += w
        if best is None or err < best[2]:
            best = (idx, vbits, err)
    idx, vbits, err = best
    return idx, BitMatrix(1, A.cols, (vbits,)), err
