from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bincss.bitmat import bool_mul, from_columns, from_rows, hamming_dist, identity, make, select_columns, zeros
from bincss.errors import BudgetExceeded
from bincss.gcss_bool import (
    basis_within_selection,
    bool_best_coefficients,
    build_candidate,
    canonical_subsets,
    e_monotone,
    gcss_bound,
    gcss_exhaustive,
    gcss_search_cost,
    reconstruction_holds,
)
from bincss.oracle import opt_bool

from conftest import bit_matrices, column_error, dense

NEG_ID = make(2, 2, [0, 1, 1, 0])


def reference_basis(A, k, selection, pi):
    """E, F and B recomputed with dense boolean arrays straight from the set definitions."""
    M = dense(A).astype(bool)
    d = M.shape[0]
    L = len(pi)
    D = [M[:, selection[l]] for l in range(L)]

    def E(l, i):
        out = np.ones(d, dtype=bool)
        for lp in range(l, L):
            if (pi[lp] >> i) & 1:
                out &= D[lp]
        return out

    B = [E(0, i) for i in range(k)]
    for l1 in range(L):
        for l2 in range(l1 + 1, L):
            cover = np.zeros(d, dtype=bool)
            for i2 in range(k):
                if (pi[l2] >> i2) & 1:
                    cover |= E(l1, i2)
            for i in range(k):
                if (pi[l1] >> i) & 1 and (pi[l2] >> i) & 1:
                    B[i] = B[i] | (E(l1 + 1, i) & ~cover)
    return [sum(int(b) << r for r, b in enumerate(col)) for col in B]


@pytest.mark.parametrize("k,expected", [(1, 2), (2, 4), (3, 8)])
def test_bound(k, expected):
    assert gcss_bound(k) == expected


def test_canonical_subsets():
    assert canonical_subsets(2) == (1, 2, 3)


# coefficients


def test_coefficients_zero_matrix():
    Q, err = bool_best_coefficients(identity(3), zeros(3, 4))
    assert err == 0 and Q == zeros(3, 4)


def test_coefficients_own_columns():
    A = from_rows([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert bool_best_coefficients(A, A)[1] == 0


def test_coefficients_single_column_example():
    Q, err = bool_best_coefficients(from_rows([[1], [0]]), identity(2))
    assert Q.to_lists() == [[1, 0]]
    assert err == 1


@settings(max_examples=60)
@given(st.data())
def test_coefficients_optimal_against_dense_enumeration(data):
    A = data.draw(bit_matrices(max_rows=6, max_cols=6))
    P = data.draw(bit_matrices(rows=A.rows, max_cols=3))
    Q, err = bool_best_coefficients(P, A)
    assert err == column_error(A, P, "boolean")
    assert hamming_dist(A, bool_mul(P, Q)) == err


# candidate construction


def test_k1_candidate_is_the_column():
    A = from_rows([[1, 0, 1], [0, 1, 1]])
    c = build_candidate(A, 1, (2,), (1,))
    assert c.B == (A.columns[2],)
    assert c.F == {}
    assert c.E[0] == (A.columns[2],)


@pytest.mark.parametrize("k", [1, 2])
def test_zero_matrix_candidates(k):
    A = zeros(3, 3)
    L = (1 << k) - 1
    c = build_candidate(A, k, (0,) * L, canonical_subsets(k))
    assert all(b == 0 for b in c.B) and c.error == 0


def test_negated_identity_has_exact_candidate():
    errors = [
        build_candidate(NEG_ID, 2, sel, pi).error
        for sel in product(range(2), repeat=3)
        for pi in permutations(canonical_subsets(2))
    ]
    assert min(errors) == 0


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_candidate_matches_reference(data):
    k = data.draw(st.integers(1, 3))
    A = data.draw(bit_matrices(max_rows=6, max_cols=5))
    L = (1 << k) - 1
    sel = tuple(data.draw(st.lists(st.integers(0, A.cols - 1), min_size=L, max_size=L)))
    pi = tuple(data.draw(st.permutations(canonical_subsets(k))))
    c = build_candidate(A, k, sel, pi)
    assert list(c.B) == reference_basis(A, k, sel, pi)
    assert c.error == column_error(A, c.basis(), "boolean")
    assert e_monotone(c) and reconstruction_holds(c) and basis_within_selection(c)


def test_candidate_validation():
    with pytest.raises(ValueError):
        build_candidate(NEG_ID, 2, (0, 1), (1, 2, 3))
    with pytest.raises(ValueError):
        build_candidate(NEG_ID, 2, (0, 1, 1), (1, 2, 2))
    with pytest.raises(IndexError):
        build_candidate(NEG_ID, 2, (0, 1, 2), (1, 2, 3))


# exhaustive search


def test_exhaustive_examples():
    assert gcss_exhaustive(NEG_ID, 2).error == 0
    assert gcss_exhaustive(identity(2), 1).error == 1


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_exact_boolean_rank_recovered(data):
    k = data.draw(st.integers(1, 2))
    U = data.draw(bit_matrices(rows=data.draw(st.integers(1, 5)), cols=k))
    V = data.draw(bit_matrices(rows=k, cols=data.draw(st.integers(1, 5))))
    assert gcss_exhaustive(bool_mul(U, V), k).error == 0


@settings(max_examples=40, deadline=None)
@given(bit_matrices(max_rows=6, max_cols=6))
def test_k1_is_best_single_column(A):
    best = min(column_error(A, select_columns(A, [j]), "boolean") for j in range(A.cols))
    assert gcss_exhaustive(A, 1).error == best


@settings(max_examples=25, deadline=None)
@given(bit_matrices(max_rows=5, max_cols=5), st.integers(1, 2))
def test_ratio_bound_holds(A, k):
    sol = gcss_exhaustive(A, k)
    assert sol.error <= gcss_bound(k) * opt_bool(A, k).error
    assert hamming_dist(A, bool_mul(sol.B, sol.Q)) == sol.error


def test_solution_witness_is_reproducible():
    A = from_columns(4, [0b0011, 0b0110, 0b1100, 0b1001, 0b1111])
    sol = gcss_exhaustive(A, 2)
    assert sol.pi == list(permutations(canonical_subsets(2)))[sol.pi_rank]
    rebuilt = build_candidate(A, 2, sol.selection, sol.pi)
    assert rebuilt.basis() == sol.B and rebuilt.error == sol.error


def test_callback_sees_every_candidate():
    seen = []
    A = from_rows([[1, 0, 1], [0, 1, 1]])
    sol = gcss_exhaustive(A, 2, on_candidate=seen.append)
    assert len(seen) == 3**3 * 6
    assert sol == gcss_exhaustive(A, 2)


def test_workers_do_not_change_answer():
    A = make(4, 5, [(i * 5 + j) * 2654435761 >> 9 & 1 for i in range(4) for j in range(5)])
    assert gcss_exhaustive(A, 2, workers=1) == gcss_exhaustive(A, 2, workers=2)


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as info:
        gcss_exhaustive(identity(5), 2, budget=100)
    assert info.value.required == gcss_search_cost(5, 2) == 125 * 6 * 4 * 5
