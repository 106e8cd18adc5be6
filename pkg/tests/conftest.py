"""Shared strategies and dense reference implementations.

The references work on plain nested lists or numpy integer arrays and never
touch the packed-integer kernels, so agreement is a real cross-check.
"""

from __future__ import annotations

from itertools import product

import numpy as np
from hypothesis import strategies as st

from bincss.bitmat import BitMatrix, from_rows


@st.composite
def bit_matrices(draw, max_rows: int = 6, max_cols: int = 6, min_rows: int = 1, min_cols: int = 1, rows=None, cols=None):
    d = rows if rows is not None else draw(st.integers(min_rows, max_rows))
    n = cols if cols is not None else draw(st.integers(min_cols, max_cols))
    entries = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=d, max_size=d))
    return from_rows(entries)


def dense(A: BitMatrix) -> np.ndarray:
    return np.array(A.to_lists(), dtype=np.int64)


def from_dense(M: np.ndarray) -> BitMatrix:
    return from_rows([[int(x) for x in r] for r in M])


def dense_gf2_mul(A: BitMatrix, B: BitMatrix) -> np.ndarray:
    return (dense(A) @ dense(B)) % 2


def dense_bool_mul(A: BitMatrix, B: BitMatrix) -> np.ndarray:
    return ((dense(A) @ dense(B)) > 0).astype(np.int64)


def dense_rank_gf2(A: BitMatrix) -> int:
    M = dense(A) % 2
    rank = 0
    rows, cols = M.shape
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if M[r, c]), None)
        if pivot is None:
            continue
        M[[rank, pivot]] = M[[pivot, rank]]
        for r in range(rows):
            if r != rank and M[r, c]:
                M[r] ^= M[rank]
        rank += 1
    return rank


def all_binary(rows: int, cols: int):
    for bits in product((0, 1), repeat=rows * cols):
        yield np.array(bits, dtype=np.int64).reshape(rows, cols)


def brute_opt(A: BitMatrix, k: int, semiring: str) -> int:
    """Minimum error over every pair ``(U, V)``; only feasible for a handful of entries."""
    M = dense(A)
    d, n = M.shape
    best = None
    Vs = list(all_binary(k, n))
    for U in all_binary(d, k):
        for V in Vs:
            P = U @ V
            P = P % 2 if semiring == "gf2" else (P > 0).astype(np.int64)
            err = int(np.sum(P != M))
            if best is None or err < best:
                best = err
    return best


def column_error(A: BitMatrix, P: BitMatrix, semiring: str) -> int:
    """Sum over columns of the distance to the nearest combination of ``P``'s columns, by dense enumeration."""
    M = dense(A)
    B = dense(P)
    k = B.shape[1]
    combos = []
    for c in product((0, 1), repeat=k):
        v = B @ np.array(c, dtype=np.int64)
        combos.append(v % 2 if semiring == "gf2" else (v > 0).astype(np.int64))
    return sum(min(int(np.sum(col != t)) for t in combos) for col in M.T)
