from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bincss.bitmat import BitColumn, identity, ones
from bincss.errors import BudgetExceeded, FormatError
from bincss.hardness import (
    SignMatrix,
    binary_from_sign,
    check_rank1_identity,
    default_m,
    format_smx,
    kron_allones,
    max_biclique,
    max_bipartite_cut,
    parse_smx,
    read_smx,
    sign_from_binary,
    sylvester_hadamard,
    tilde_reduction,
    verify_block_lemma,
    verify_lindsey,
    verify_tilde_gap,
    write_smx,
)

from conftest import bit_matrices

S = SignMatrix.from_array


@st.composite
def sign_matrices(draw, max_rows=4, max_cols=4, values=(-1, 0, 1)):
    d = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return S(np.array(draw(st.lists(st.sampled_from(values), min_size=d * n, max_size=d * n))).reshape(d, n))


def brute_bilinear(W: np.ndarray, xs, ys) -> int:
    return max(int(np.array(x) @ W @ np.array(y)) for x in xs for y in ys)


def binary_vectors(n):
    return list(product((0, 1), repeat=n))


def sign_vectors(n):
    return list(product((-1, 1), repeat=n))


# Sylvester matrices


def test_hadamard_small():
    assert sylvester_hadamard(1).array().tolist() == [[1]]
    assert sylvester_hadamard(2).array().tolist() == [[1, 1], [1, -1]]


@pytest.mark.parametrize("m", [1, 2, 4, 8, 16, 32])
def test_hadamard_orthogonal(m):
    H = sylvester_hadamard(m).array()
    assert (H.T @ H == m * np.eye(m, dtype=np.int64)).all()


@pytest.mark.parametrize("m", [0, 3, 6])
def test_hadamard_requires_power_of_two(m):
    with pytest.raises(ValueError):
        sylvester_hadamard(m)


# gadgets


def test_kron_examples():
    W = S([[1, 0], [-1, 1]])
    assert kron_allones(W, 1) == W
    assert kron_allones(S([[1]]), 2).array().tolist() == [[1, 1], [1, 1]]
    assert kron_allones(S([[1, -1]]), 2).array().tolist() == [[1, 1, -1, -1], [1, 1, -1, -1]]


def test_tilde_examples():
    W = S([[1, -1], [-1, 1]])
    assert tilde_reduction(W, 2) == kron_allones(W, 2)
    assert tilde_reduction(S([[0]]), 2) == sylvester_hadamard(2)
    T = tilde_reduction(S([[0, 1], [-1, 0]]), 2).array()
    H = sylvester_hadamard(2).array()
    assert (T[:2, :2] == H).all() and (T[2:, 2:] == H).all()
    assert (T[:2, 2:] == 1).all() and (T[2:, :2] == -1).all()


@pytest.mark.parametrize("n,m", [(1, 8), (2, 128), (3, 512)])
def test_default_m(n, m):
    assert default_m(n) == m


# brute-force solvers


def test_biclique_examples():
    assert max_biclique(S([[1]])).value == 1
    assert max_biclique(S([[-1]])).value == 0
    assert max_biclique(S([[1, -1], [-1, 1]])).value == 1


def test_cut_examples():
    assert max_bipartite_cut(S([[1]]))[0] == 1
    val, x, y = max_bipartite_cut(S([[1, -1]]))
    assert (val, x, y) == (2, (1,), (1, -1))
    assert max_bipartite_cut(S([[0, 0], [0, 0]]))[0] == 0


@settings(max_examples=60, deadline=None)
@given(sign_matrices())
def test_biclique_matches_enumeration(W):
    res = max_biclique(W)
    A = W.array()
    assert res.value == brute_bilinear(A, binary_vectors(W.rows), binary_vectors(W.cols))
    assert int(np.array(res.x) @ A @ np.array(res.y)) == res.value
    assert res.value >= 0


@settings(max_examples=60, deadline=None)
@given(sign_matrices())
def test_cut_matches_enumeration(W):
    val, x, y = max_bipartite_cut(W)
    A = W.array()
    assert val == brute_bilinear(A, sign_vectors(W.rows), sign_vectors(W.cols))
    assert int(np.array(x) @ A @ np.array(y)) == val


# rank-1 identity


def test_rank1_identity_examples():
    lhs, rhs, eq = check_rank1_identity(identity(2), BitColumn.from_list([1, 1]), BitColumn.from_list([1, 0]))
    assert (lhs, rhs, eq) == (2, 2, True)
    A = ones(2, 3)
    lhs, rhs, eq = check_rank1_identity(A, BitColumn(2, 0), BitColumn(3, 0b101))
    assert lhs == rhs == A.popcount()


@settings(max_examples=100)
@given(st.data())
def test_rank1_identity_random(data):
    A = data.draw(bit_matrices(max_rows=7, max_cols=7))
    u = BitColumn(A.rows, data.draw(st.integers(0, (1 << A.rows) - 1)))
    v = BitColumn(A.cols, data.draw(st.integers(0, (1 << A.cols) - 1)))
    assert check_rank1_identity(A, u, v)[2]


@given(bit_matrices())
def test_sign_binary_roundtrip(A):
    assert binary_from_sign(sign_from_binary(A)) == A


def test_binary_from_sign_rejects_zero():
    with pytest.raises(ValueError):
        binary_from_sign(S([[0, 1]]))


# lemma verifiers


def test_block_lemma_examples():
    W = S([[1, -1], [-1, 1]])
    assert verify_block_lemma(W, 1)[2]
    assert verify_block_lemma(W, 2) == (4, 4, True)


@settings(max_examples=20, deadline=None)
@given(sign_matrices(max_rows=2, max_cols=2).filter(lambda W: W.rows == W.cols), st.sampled_from([2, 4]))
def test_block_lemma_random(W, m):
    assert verify_block_lemma(W, m)[2]


def test_block_lemma_size_cap():
    with pytest.raises(BudgetExceeded):
        verify_block_lemma(S(np.ones((4, 4), dtype=int)), 4)


@pytest.mark.parametrize("m,best", [(1, 1), (2, 2)])
def test_lindsey_small(m, best):
    val, bound_sq, holds = verify_lindsey(m)
    assert val == best and bound_sq == m**3 and holds


@pytest.mark.parametrize("m", [4, 8, 16])
def test_lindsey_holds(m):
    assert verify_lindsey(m)[2]


def test_tilde_gap_examples():
    assert verify_tilde_gap(S([[1, -1], [1, 1]]), 2)[0] == 0
    assert verify_tilde_gap(S([[0]]), 2) == (2, 8, True)


@settings(max_examples=15, deadline=None)
@given(sign_matrices(max_rows=2, max_cols=2).filter(lambda W: W.rows == W.cols), st.sampled_from([2, 4]))
def test_tilde_gap_random(W, m):
    assert verify_tilde_gap(W, m)[2]


# .smx format


@given(sign_matrices())
def test_smx_roundtrip(W):
    assert parse_smx(format_smx(W)) == W


def test_smx_file(tmp_path):
    W = S([[1, 0], [-1, 1]])
    p = tmp_path / "w.smx"
    write_smx(p, W)
    assert p.read_text() == "2 2\n1 0\n-1 1\n"
    assert read_smx(p) == W


@pytest.mark.parametrize("text", ["1 2\n1 0", "1 2\n1 2\n", "2 1\n1\n", "1 2\n1  0\n", "x\n"])
def test_smx_malformed(text):
    with pytest.raises(FormatError):
        parse_smx(text)
