"""Column subset selection over GF(2).

Given ``k`` columns of ``A`` as a basis ``P``, every column of ``A`` is
approximated by its nearest XOR-combination of the basis.  The exhaustive
search over all ``C(n, k)`` subsets achieves the ratio
``k/2 + 1 + k / (2 (2**k - 1))`` against the optimal rank-``k`` factorization;
the same bound is reached by a basis of nearest-neighbour columns induced by
some change of basis of an optimal ``U`` (see :func:`verify_nn_basis_bound`).
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .bitmat import BitMatrix, from_columns, gf2_rank, gf2_span_table
from .errors import DimensionError, check_budget
from .search import DEFAULT_BUDGET, chunked_min

MAX_COEFF_BITS = 20
MAX_GL_DIM = 3


@dataclass(frozen=True)
class CssSolution:
    subset: tuple[int, ...]
    Q: BitMatrix
    error: int
    k: int


@dataclass(frozen=True)
class BoundParams:
    """The exact rational constants behind the GF(2) CSS guarantee for rank ``k``."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")

    def lam(self, r: int) -> Fraction:
        if not 0 <= r <= self.k:
            raise ValueError(f"r must lie in [0, {self.k}]")
        return lambda_r(r)

    @property
    def ratio(self) -> Fraction:
        return 1 + lambda_r(self.k)


@dataclass(frozen=True)
class InducedBasisReport:
    B: BitMatrix
    basis_indices: tuple[int, ...]
    error: int


def lambda_r(r: int) -> Fraction:
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return Fraction(0)
    return Fraction(r, 2) * (1 + Fraction(1, 2**r - 1))


def ratio_bound(k: int) -> Fraction:
    """``k/2 + 1 + k/(2(2^k - 1))`` as an exact fraction."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(k, 2) + 1 + Fraction(k, 2 * (2**k - 1))


def _best_codes(table: Sequence[int], cols: Sequence[int]) -> tuple[list[int], int]:
    # smallest code wins ties: list.index returns the first minimum
    codes = []
    total = 0
    for a in cols:
        costs = [(a ^ t).bit_count() for t in table]
        e = min(costs)
        codes.append(costs.index(e))
        total += e
    return codes, total


def _coefficients_matrix(k: int, codes: Sequence[int]) -> BitMatrix:
    return from_columns(k, codes)


def gf2_best_coefficients(P: BitMatrix, A: BitMatrix) -> tuple[BitMatrix, int]:
    """Per-column optimal coefficients ``Q`` for basis ``P`` and the total error.

    Ties go to the smallest coefficient vector read as an integer (bit ``i`` is
    the coefficient of basis column ``i``).
    """
    if P.rows != A.rows:
        raise DimensionError(f"basis has {P.rows} rows, target has {A.rows}")
    if P.cols > MAX_COEFF_BITS:
        raise DimensionError(f"k = {P.cols} exceeds the coefficient enumeration limit {MAX_COEFF_BITS}")
    codes, total = _best_codes(gf2_span_table(P.columns), A.columns)
    return _coefficients_matrix(P.cols, codes), total


def _check_subset(A: BitMatrix, subset: Sequence[int]) -> None:
    if len(set(subset)) != len(subset):
        raise ValueError(f"duplicate column index in {tuple(subset)}")
    for j in subset:
        if not 0 <= j < A.cols:
            raise IndexError(f"column index {j} out of range for {A.cols} columns")


def css_subset_error(A: BitMatrix, subset: Sequence[int]) -> tuple[BitMatrix, int]:
    _check_subset(A, subset)
    P = from_columns(A.rows, [A.columns[j] for j in subset])
    return gf2_best_coefficients(P, A)


def css_search_cost(n: int, k: int) -> int:
    return comb(n, k) * (1 << k) * n


def _css_chunk(cols: tuple[int, ...], k: int, first: int):
    best = None
    rest = range(first + 1, len(cols))
    for tail in combinations(rest, k - 1):
        subset = (first,) + tail
        table = gf2_span_table([cols[j] for j in subset])
        err = 0
        for a in cols:
            err += min((a ^ t).bit_count() for t in table)
            if best is not None and err > best[0]:
                break
        else:
            if best is None or err < best[0]:
                best = (err, subset)
    return best


def css_exhaustive(A: BitMatrix, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> CssSolution:
    """Best ``k``-column basis over all subsets.

    Subsets are ranked by ``(error, sorted index tuple)``; the enumeration is split
    by smallest index, so ``workers > 1`` gives the identical answer.
    """
    n = A.cols
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}]")
    check_budget("css_exhaustive", css_search_cost(n, k), budget)
    args = [(A.columns, k, first) for first in range(n - k + 1)]
    err, subset = chunked_min(_css_chunk, args, workers)
    Q, err2 = css_subset_error(A, subset)
    assert err == err2
    return CssSolution(subset, Q, err, k)


def invertible_matrices(k: int) -> Iterator[BitMatrix]:
    """All of GL(k, 2), ordered by the tuple of column bitsets."""
    if not 1 <= k <= MAX_GL_DIM:
        raise ValueError(f"GL enumeration supports 1 <= k <= {MAX_GL_DIM}")
    for cols in product(range(1, 1 << k), repeat=k):
        B = from_columns(k, cols)
        if gf2_rank(B) == k:
            yield B


def nearest_column(A: BitMatrix, target: int) -> int:
    """Index of the column closest to ``target`` in Hamming distance; lowest index on ties."""
    dists = [(a ^ target).bit_count() for a in A.columns]
    return dists.index(min(dists))


def induced_nn_basis(A: BitMatrix, U: BitMatrix, B: BitMatrix) -> InducedBasisReport:
    """Error of the basis formed by the nearest columns of ``A`` to the columns of ``U B``."""
    k = U.cols
    if U.rows != A.rows:
        raise DimensionError("U and A must have the same number of rows")
    if B.shape != (k, k):
        raise DimensionError(f"B must be {k}x{k}")
    if gf2_rank(B) != k:
        raise ValueError("B is singular over GF(2)")
    ucols = U.columns
    picks = []
    for b in B.columns:
        target = 0
        for r in range(k):
            if (b >> r) & 1:
                target ^= ucols[r]
        picks.append(nearest_column(A, target))
    P = from_columns(A.rows, [A.columns[j] for j in picks])
    _, err = gf2_best_coefficients(P, A)
    return InducedBasisReport(B, tuple(picks), err)


def verify_nn_basis_bound(A: BitMatrix, k: int, opt_error: int, U: BitMatrix) -> tuple[int, bool]:
    """Minimum induced nearest-neighbour error over GL(k, 2) and whether it is within ``(1 + lambda_k) * opt``.

    ``U`` must be an optimal rank-``k`` basis for ``A`` with error ``opt_error``.
    """
    if U.cols != k:
        raise DimensionError(f"U has {U.cols} columns, expected {k}")
    if k > MAX_GL_DIM:
        raise ValueError(f"k = {k} exceeds the GL enumeration limit {MAX_GL_DIM}")
    best = min(induced_nn_basis(A, U, B).error for B in invertible_matrices(k))
    return best, best <= (1 + lambda_r(k)) * opt_error
