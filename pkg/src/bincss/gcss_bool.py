"""Generalized column subset selection over the Boolean semiring.

Each candidate picks ``2**k - 1`` columns of ``A`` (repeats allowed) and an
ordering ``S_1, ..., S_{2^k-1}`` of the nonempty subsets of ``{0..k-1}``.  The
column picked at position ``l`` plays the role of ``D_{S_l}``.  From these the
basis is built entrywise with intersections, unions and differences:

* ``E[l][i]``  = intersection of ``D_{S_l'}`` over ``l' >= l`` with ``i in S_l'``
  (all-ones if there is no such ``l'``);
* ``F[i, l1, l2]`` = ``E[l1+1][i]`` minus the union of ``E[l1][i']`` over
  ``i' in S_l2``, for ``l1 < l2`` and ``i in S_l1 & S_l2``;
* ``B_i`` = ``E[0][i]`` united with every ``F[i, ., .]``.

Positions ``l`` are 0-based here.  Subsets are ``k``-bit indicator integers.
The exhaustive search is within ``2**k`` of the optimal Boolean rank-``k`` error.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

from .bitmat import BitMatrix, bool_union_table, from_columns
from .errors import DimensionError, check_budget
from .search import DEFAULT_BUDGET, chunked_min

MAX_COEFF_BITS = 20


@dataclass(frozen=True)
class GcssCandidate:
    selection: tuple[int, ...]
    pi: tuple[int, ...]  # pi[l] = indicator of S_l
    D: dict[int, int]
    E: tuple[tuple[int, ...], ...]
    F: dict[tuple[int, int, int], int]
    B: tuple[int, ...]
    error: int
    rows: int
    k: int

    def basis(self) -> BitMatrix:
        return from_columns(self.rows, self.B)


@dataclass(frozen=True)
class GcssSolution:
    B: BitMatrix
    Q: BitMatrix
    error: int
    selection: tuple[int, ...]
    pi: tuple[int, ...]
    pi_rank: int


def gcss_bound(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return 2**k


def canonical_subsets(k: int) -> tuple[int, ...]:
    return tuple(range(1, 1 << k))


def bool_best_coefficients(Bmat: BitMatrix, A: BitMatrix) -> tuple[BitMatrix, int]:
    """Per column, the union of basis columns (empty union allowed) closest to it.

    Ties go to the smallest subset indicator.
    """
    if Bmat.rows != A.rows:
        raise DimensionError(f"basis has {Bmat.rows} rows, target has {A.rows}")
    k = Bmat.cols
    if k > MAX_COEFF_BITS:
        raise DimensionError(f"k = {k} exceeds the coefficient enumeration limit {MAX_COEFF_BITS}")
    table = bool_union_table(Bmat.columns)
    codes = []
    total = 0
    for a in A.columns:
        costs = [(a ^ t).bit_count() for t in table]
        e = min(costs)
        codes.append(costs.index(e))
        total += e
    return from_columns(k, codes), total


def _construct(D_seq: Sequence[int], pi: Sequence[int], k: int, full: int):
    """E, F and B for the ordered columns ``D_seq`` (``D_seq[l]`` is ``D_{pi[l]}``)."""
    L = len(pi)
    E = [None] * (L + 1)
    E[L] = (full,) * k
    for l in range(L - 1, -1, -1):
        S = pi[l]
        d = D_seq[l]
        nxt = E[l + 1]
        E[l] = tuple(nxt[i] & d if (S >> i) & 1 else nxt[i] for i in range(k))
    F = {}
    B = list(E[0])
    for l1 in range(L - 1):
        S1 = pi[l1]
        El1 = E[l1]
        El1p = E[l1 + 1]
        for l2 in range(l1 + 1, L):
            S2 = pi[l2]
            common = S1 & S2
            if not common:
                continue
            cover = 0
            for i2 in range(k):
                if (S2 >> i2) & 1:
                    cover |= El1[i2]
            for i in range(k):
                if (common >> i) & 1:
                    f = El1p[i] & ~cover & full
                    F[(i, l1, l2)] = f
                    B[i] |= f
    return E[:L], F, tuple(B)


def _check_candidate_args(A: BitMatrix, k: int, selection: Sequence[int], pi: Sequence[int]) -> None:
    L = (1 << k) - 1
    if len(selection) != L:
        raise ValueError(f"selection must have {L} entries, got {len(selection)}")
    if sorted(pi) != list(range(1, L + 1)):
        raise ValueError(f"pi must be a bijection onto the {L} nonempty subsets of [{k}]")
    for j in selection:
        if not 0 <= j < A.cols:
            raise IndexError(f"column index {j} out of range for {A.cols} columns")


def _union_error(B: Sequence[int], cols: Sequence[int]) -> int:
    table = bool_union_table(B)
    return sum(min((a ^ t).bit_count() for t in table) for a in cols)


def build_candidate(A: BitMatrix, k: int, selection: Sequence[int], pi: Sequence[int]) -> GcssCandidate:
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_candidate_args(A, k, selection, pi)
    cols = A.columns
    D_seq = [cols[j] for j in selection]
    full = (1 << A.rows) - 1
    E, F, B = _construct(D_seq, pi, k, full)
    D = {S: D_seq[l] for l, S in enumerate(pi)}
    return GcssCandidate(
        selection=tuple(selection),
        pi=tuple(pi),
        D=D,
        E=E,
        F=F,
        B=B,
        error=_union_error(B, cols),
        rows=A.rows,
        k=k,
    )


def gcss_search_cost(n: int, k: int) -> int:
    L = (1 << k) - 1
    return n**L * factorial(L) * (1 << k) * n


def _gcss_chunk(cols: tuple[int, ...], rows: int, k: int, first: int):
    L = (1 << k) - 1
    full = (1 << rows) - 1
    orders = list(permutations(canonical_subsets(k)))
    cache: dict[tuple[int, ...], int] = {}
    best = None
    for tail in product(range(len(cols)), repeat=L - 1):
        selection = (first,) + tail
        D_seq = [cols[j] for j in selection]
        for rank, pi in enumerate(orders):
            _, _, B = _construct(D_seq, pi, k, full)
            err = cache.get(B)
            if err is None:
                err = cache[B] = _union_error(B, cols)
            if best is None or err < best[0]:
                best = (err, selection, rank)
    return best


def gcss_exhaustive(
    A: BitMatrix,
    k: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    on_candidate: Callable[[GcssCandidate], None] | None = None,
) -> GcssSolution:
    """Run the construction for every selection (with repetition) and every ordering.

    The winner minimizes ``(error, selection, rank of pi)`` where the rank is the
    lexicographic position of ``pi`` among permutations of the canonical subset
    order.  ``on_candidate`` sees every fully built candidate and forces a
    serial run.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = A.cols
    check_budget("gcss_exhaustive", gcss_search_cost(n, k), budget)
    if on_candidate is not None:
        L = (1 << k) - 1
        orders = list(permutations(canonical_subsets(k)))
        best = None
        for selection in product(range(n), repeat=L):
            for rank, pi in enumerate(orders):
                cand = build_candidate(A, k, selection, pi)
                on_candidate(cand)
                if best is None or cand.error < best[0]:
                    best = (cand.error, selection, rank)
    else:
        args = [(A.columns, A.rows, k, first) for first in range(n)]
        best = chunked_min(_gcss_chunk, args, workers)
    err, selection, rank = best
    pi = list(permutations(canonical_subsets(k)))[rank]
    cand = build_candidate(A, k, selection, pi)
    Bmat = cand.basis()
    Q, err2 = bool_best_coefficients(Bmat, A)
    assert err == cand.error == err2
    return GcssSolution(Bmat, Q, err, tuple(selection), tuple(pi), rank)


# Structural checks used by the invariant suite.


def e_monotone(c: GcssCandidate) -> bool:
    """``E[l][i]`` is contained in ``E[l+1][i]`` for every ``l`` and ``i``."""
    for l in range(len(c.E) - 1):
        for i in range(c.k):
            if c.E[l][i] & ~c.E[l + 1][i]:
                return False
    return True


def reconstruction_holds(c: GcssCandidate) -> bool:
    """For every position ``l``: the union of ``B_i`` over ``S_l`` equals the union of
    ``E[l][i]`` over ``S_l`` together with the ``F`` pieces with ``l1 >= l``."""
    for l, S in enumerate(c.pi):
        lhs = 0
        rhs = 0
        for i in range(c.k):
            if (S >> i) & 1:
                lhs |= c.B[i]
                rhs |= c.E[l][i]
        for (i, l1, _l2), f in c.F.items():
            if (S >> i) & 1 and l1 >= l:
                rhs |= f
        if lhs != rhs:
            return False
    return True


def basis_within_selection(c: GcssCandidate) -> bool:
    """Every bit of every ``B_i`` is set in at least one selected column."""
    union = 0
    for d in c.D.values():
        union |= d
    return all(not (b & ~union) for b in c.B)
