from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bincss.bitmat import (
    BitColumn,
    BitMatrix,
    bool_mul,
    bool_union_columns,
    bool_union_table,
    format_bmx,
    from_columns,
    from_rows,
    gf2_combine_columns,
    gf2_mul,
    gf2_rank,
    gf2_span_table,
    gray_code,
    hamming_dist,
    identity,
    make,
    ones,
    parse_bmx,
    read_bmx,
    select_columns,
    write_bmx,
    zeros,
)
from bincss.errors import DimensionError, FormatError

from conftest import bit_matrices, dense, dense_bool_mul, dense_gf2_mul, dense_rank_gf2, from_dense

J2 = ones(2, 2)
I2 = identity(2)


# construction


def test_make_singleton():
    assert make(1, 1, [1]).to_lists() == [[1]]


def test_make_negated_identity():
    assert make(2, 2, [0, 1, 1, 0]).to_lists() == [[0, 1], [1, 0]]


def test_make_rectangular_rows():
    A = make(2, 3, [1, 0, 1, 0, 1, 1])
    assert format_bmx(A).splitlines()[1:] == ["101", "011"]


@pytest.mark.parametrize("d,n,entries", [(0, 1, []), (1, 0, []), (2, 2, [1, 0, 1])])
def test_make_rejects_bad_shape(d, n, entries):
    with pytest.raises(DimensionError):
        make(d, n, entries)


def test_make_rejects_non_binary():
    with pytest.raises(ValueError):
        make(1, 2, [0, 2])


def test_padding_bits_rejected():
    with pytest.raises(DimensionError):
        BitMatrix(1, 2, (0b100,))


def test_from_rows_ragged():
    with pytest.raises(DimensionError):
        from_rows([[1, 0], [1]])


@given(bit_matrices())
def test_columns_roundtrip(A):
    assert from_columns(A.rows, A.columns) == A
    assert A.T.T == A
    assert dense(A.T).tolist() == dense(A).T.tolist()


@given(bit_matrices())
def test_column_bits_match_entries(A):
    for j in range(A.cols):
        assert A.column(j).to_list() == [A.entry(i, j) for i in range(A.rows)]


def test_select_columns_range():
    with pytest.raises(IndexError):
        select_columns(I2, [2])


def test_bitcolumn_from_list_and_xor():
    a = BitColumn.from_list([1, 0, 1])
    b = BitColumn.from_list([1, 1, 0])
    assert (a ^ b).to_list() == [0, 1, 1]
    assert a.weight() == 2
    with pytest.raises(DimensionError):
        a ^ BitColumn.from_list([1])


# products


def test_gf2_mul_examples():
    B = make(2, 3, [1, 0, 1, 0, 1, 1])
    assert gf2_mul(I2, B) == B
    assert gf2_mul(from_rows([[1, 1], [0, 1]]), from_rows([[1], [1]])).to_lists() == [[0], [1]]
    assert gf2_mul(J2, J2) == zeros(2, 2)


def test_bool_mul_examples():
    B = make(2, 3, [1, 0, 1, 0, 1, 1])
    assert bool_mul(from_rows([[1], [1]]), from_rows([[1, 1]])) == J2
    assert bool_mul(J2, J2) == J2
    assert bool_mul(I2, B) == B


def test_inner_dimension_mismatch():
    with pytest.raises(DimensionError):
        gf2_mul(I2, identity(3))
    with pytest.raises(DimensionError):
        bool_mul(I2, identity(3))


@st.composite
def product_pair(draw):
    d, m, n = (draw(st.integers(1, 6)) for _ in range(3))
    return draw(bit_matrices(rows=d, cols=m)), draw(bit_matrices(rows=m, cols=n))


@given(product_pair())
def test_gf2_mul_matches_dense(pair):
    A, B = pair
    assert dense(gf2_mul(A, B)).tolist() == dense_gf2_mul(A, B).tolist()


@given(product_pair())
def test_bool_mul_matches_dense(pair):
    A, B = pair
    assert dense(bool_mul(A, B)).tolist() == dense_bool_mul(A, B).tolist()


# distance and rank


def test_hamming_examples():
    assert hamming_dist(I2, I2) == 0
    assert hamming_dist(I2, J2) == 2
    assert hamming_dist(zeros(3, 3), ones(3, 3)) == 9


def test_hamming_shape_mismatch():
    with pytest.raises(DimensionError):
        hamming_dist(I2, identity(3))


@given(st.data())
def test_hamming_matches_dense(data):
    A = data.draw(bit_matrices())
    B = data.draw(bit_matrices(rows=A.rows, cols=A.cols))
    assert hamming_dist(A, B) == int(np.sum(dense(A) != dense(B)))


def test_rank_examples():
    assert gf2_rank(identity(3)) == 3
    assert gf2_rank(make(3, 2, [1, 0, 0, 1, 1, 1])) == 2
    assert gf2_rank(zeros(4, 3)) == 0


@given(bit_matrices(max_rows=7, max_cols=7))
def test_rank_matches_dense_elimination(A):
    r = gf2_rank(A)
    assert r == dense_rank_gf2(A)
    assert r == gf2_rank(A.T)
    assert r <= min(A.shape)


# combinations


def test_combine_examples():
    P = from_rows([[1, 0], [1, 1]])
    assert gf2_combine_columns(P, BitColumn(2, 0)).to_list() == [0, 0]
    assert bool_union_columns(P, BitColumn(2, 0)).to_list() == [0, 0]
    assert gf2_combine_columns(I2, BitColumn.from_list([1, 1])).to_list() == [1, 1]
    assert bool_union_columns(I2, BitColumn.from_list([1, 1])).to_list() == [1, 1]
    assert gf2_combine_columns(P, BitColumn.from_list([1, 1])).to_list() == [1, 0]
    assert bool_union_columns(P, BitColumn.from_list([1, 1])).to_list() == [1, 1]


def test_combine_length_mismatch():
    with pytest.raises(DimensionError):
        gf2_combine_columns(I2, BitColumn(3, 0))


@pytest.mark.parametrize("k", range(0, 7))
def test_gray_code_visits_every_code_once(k):
    seen = []
    prev = None
    for g, bit in gray_code(k):
        if prev is not None:
            assert g ^ prev == 1 << bit
        seen.append(g)
        prev = g
    assert sorted(seen) == list(range(1 << k))


@given(bit_matrices(max_rows=5, max_cols=5))
def test_span_tables_match_direct_combination(P):
    gf = gf2_span_table(P.columns)
    bo = bool_union_table(P.columns)
    for c in range(1 << P.cols):
        coeff = BitColumn(P.cols, c)
        assert gf[c] == gf2_combine_columns(P, coeff).bits
        assert bo[c] == bool_union_columns(P, coeff).bits
        vec = dense(P) @ np.array(coeff.to_list(), dtype=np.int64)
        assert from_dense((vec % 2)[:, None]).columns[0] == gf[c]


@given(bit_matrices(max_rows=4, max_cols=4))
def test_gf2_combination_is_linear(P):
    k = P.cols
    for a, b in product(range(1 << k), repeat=2):
        lhs = gf2_combine_columns(P, BitColumn(k, a ^ b))
        rhs = gf2_combine_columns(P, BitColumn(k, a)) ^ gf2_combine_columns(P, BitColumn(k, b))
        assert lhs == rhs


# .bmx format


@given(bit_matrices(max_rows=8, max_cols=8))
def test_bmx_roundtrip(A):
    assert parse_bmx(format_bmx(A)) == A


def test_bmx_file_roundtrip(tmp_path):
    A = make(2, 3, [1, 0, 1, 0, 1, 1])
    path = tmp_path / "a.bmx"
    write_bmx(path, A)
    assert path.read_text() == "2 3\n101\n011\n"
    assert read_bmx(path) == A


@pytest.mark.parametrize(
    "text",
    [
        "2 2\n01\n10",  # no final newline
        "2 2\n01\n",  # missing row
        "2 2\n01\n10\n11\n",  # extra row
        "2 2\n012\n10\n",  # long row
        "2 2\n0x\n10\n",  # bad symbol
        "2  2\n01\n10\n",  # double space
        "02 2\n01\n10\n",  # leading zero
        "0 2\n",  # zero dimension
        "2 2\r\n01\r\n10\r\n",  # CRLF
        "a b\n",
    ],
)
def test_bmx_rejects_malformed(text):
    with pytest.raises(FormatError):
        parse_bmx(text)


@settings(max_examples=50)
@given(bit_matrices(), st.data())
def test_complement_and_or(A, data):
    B = data.draw(bit_matrices(rows=A.rows, cols=A.cols))
    assert hamming_dist(A, A.complement()) == A.rows * A.cols
    assert (A | B).to_lists() == np.maximum(dense(A), dense(B)).tolist()
    assert A.popcount() == int(dense(A).sum())
