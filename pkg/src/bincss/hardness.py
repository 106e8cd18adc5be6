"""Sign matrices and the rank-1 hardness gadgets, checked by brute force.

The chain: rank-1 binary approximation of ``A`` is maximizing ``u^T (2A - J) v``
over binary ``u, v``; a ``{-1,0,1}`` weight matrix ``W`` is blown up to
``W (x) J_m`` (same optimum times ``m^2``) and its zero blocks are replaced by a
Sylvester Hadamard matrix, which moves any bilinear value by at most
``n^2 m^{3/2}``.  Every comparison against ``m^{3/2}`` is done on squared
integers.
"""

from __future__ import annotations

import os
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .bitmat import BitColumn, BitMatrix, from_rows, hamming_dist
from .errors import DimensionError, FormatError, check_budget

MAX_ENUM_BITS = 24
MAX_GADGET_DIM = 14
MAX_LINDSEY_M = 16
_CHUNK = 1 << 14


@dataclass(frozen=True)
class SignMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError(f"zero-dimension matrix {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("entries do not match the declared shape")
        if any(x not in (-1, 0, 1) for r in self.entries for x in r):
            raise ValueError("sign matrix entries must lie in {-1, 0, 1}")

    @classmethod
    def from_array(cls, a) -> SignMatrix:
        a = np.asarray(a)
        if a.ndim != 2:
            raise DimensionError("expected a 2-D array")
        return cls(a.shape[0], a.shape[1], tuple(tuple(int(x) for x in r) for r in a))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)


@dataclass(frozen=True)
class BicliqueResult:
    value: int
    x: tuple[int, ...]
    y: tuple[int, ...]


def _is_pow2(m: int) -> bool:
    return m >= 1 and m & (m - 1) == 0


def sylvester_hadamard(m: int) -> SignMatrix:
    if not _is_pow2(m):
        raise ValueError(f"m = {m} is not a power of 2")
    H = np.array([[1]], dtype=np.int64)
    while H.shape[0] < m:
        H = np.block([[H, H], [H, -H]])
    return SignMatrix.from_array(H)


def kron_allones(W: SignMatrix, m: int) -> SignMatrix:
    if m < 1:
        raise ValueError("m must be >= 1")
    return SignMatrix.from_array(np.kron(W.array(), np.ones((m, m), dtype=np.int64)))


def tilde_reduction(W: SignMatrix, m: int) -> SignMatrix:
    """Blocks ``w J_m`` for nonzero ``w`` and the Sylvester ``H_m`` for zero ``w``."""
    H = sylvester_hadamard(m).array()
    J = np.ones((m, m), dtype=np.int64)
    Wa = W.array()
    out = np.block([[w * J if w else H for w in row] for row in Wa])
    assert set(np.unique(out)) <= {-1, 1}
    return SignMatrix.from_array(out)


def default_m(n: int) -> int:
    """Smallest power of two strictly greater than ``4 n^4``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = 1
    while m <= 4 * n**4:
        m <<= 1
    return m


def _bits(x: int, width: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(width))


def _left_products(Wa: np.ndarray, start: int, stop: int, signs: bool = False) -> np.ndarray:
    """Rows ``x^T W`` for the x encoded by the integers in ``[start, stop)``.

    Bit ``i`` of the integer is ``x_i`` (or, with ``signs``, marks ``x_i = -1``).
    """
    xs = np.arange(start, stop, dtype=np.int64)
    X = (xs[:, None] >> np.arange(Wa.shape[0], dtype=np.int64)[None, :]) & 1
    if signs:
        X = 1 - 2 * X
    return X @ Wa


def max_biclique(W: SignMatrix) -> BicliqueResult:
    """Exact ``max x^T W y`` over binary ``x, y``; smallest ``x`` (then ``y``) on ties."""
    d, n = W.shape
    if d > MAX_ENUM_BITS:
        raise ValueError(f"d = {d} exceeds the enumeration limit {MAX_ENUM_BITS}")
    Wa = W.array()
    best_val, best_x = None, 0
    for start in range(0, 1 << d, _CHUNK):
        Z = _left_products(Wa, start, min(start + _CHUNK, 1 << d))
        vals = np.maximum(Z, 0).sum(axis=1)
        at = int(np.argmax(vals))
        if best_val is None or int(vals[at]) > best_val:
            best_val, best_x = int(vals[at]), start + at
    z = _left_products(Wa, best_x, best_x + 1)[0]
    y = tuple(int(v > 0) for v in z)
    return BicliqueResult(best_val, _bits(best_x, d), y)


def max_bipartite_cut(W: SignMatrix) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Exact ``max x^T W y`` over ``x, y`` in ``{-1, 1}``; ``y_j`` takes the sign of ``(x^T W)_j``, zero as ``+1``."""
    d, n = W.shape
    if d > MAX_ENUM_BITS:
        raise ValueError(f"d = {d} exceeds the enumeration limit {MAX_ENUM_BITS}")
    Wa = W.array()
    best_val, best_x = None, 0
    for start in range(0, 1 << d, _CHUNK):
        Z = _left_products(Wa, start, min(start + _CHUNK, 1 << d), signs=True)
        vals = np.abs(Z).sum(axis=1)
        at = int(np.argmax(vals))
        if best_val is None or int(vals[at]) > best_val:
            best_val, best_x = int(vals[at]), start + at
    x = tuple(-1 if b else 1 for b in _bits(best_x, d))
    z = np.array(x, dtype=np.int64) @ Wa
    y = tuple(-1 if v < 0 else 1 for v in z)
    return best_val, x, y


def _max_abs_bilinear(M: np.ndarray) -> int:
    """``max |x^T M y|`` over binary ``x, y``: for each x the best y takes all positive or all negative entries."""
    d = M.shape[0]
    best = 0
    for start in range(0, 1 << d, _CHUNK):
        Z = _left_products(M, start, min(start + _CHUNK, 1 << d))
        pos = np.maximum(Z, 0).sum(axis=1)
        neg = np.maximum(-Z, 0).sum(axis=1)
        best = max(best, int(pos.max()), int(neg.max()))
    return best


def sign_from_binary(A: BitMatrix) -> SignMatrix:
    """``2A - J``."""
    return SignMatrix.from_array(2 * np.array(A.to_lists(), dtype=np.int64) - 1)


def binary_from_sign(W: SignMatrix) -> BitMatrix:
    """``(W + J) / 2`` for a ``{-1, 1}`` matrix; inverse of :func:`sign_from_binary`."""
    if any(x == 0 for r in W.entries for x in r):
        raise ValueError("zero entries have no binary preimage")
    return from_rows([[(x + 1) // 2 for x in r] for r in W.entries])


def check_rank1_identity(A: BitMatrix, u: BitColumn, v: BitColumn) -> tuple[int, int, bool]:
    """Both sides of ``|A - u v^T|^2 = |A|^2 - u^T (2A - J) v`` as exact integers."""
    if u.length != A.rows or v.length != A.cols:
        raise DimensionError(f"u, v of lengths {u.length}, {v.length} do not fit a {A.rows}x{A.cols} matrix")
    outer = BitMatrix(A.rows, A.cols, tuple(v.bits if (u.bits >> i) & 1 else 0 for i in range(A.rows)))
    lhs = hamming_dist(A, outer)
    S = sign_from_binary(A).array()
    uu = np.array(u.to_list(), dtype=np.int64)
    vv = np.array(v.to_list(), dtype=np.int64)
    rhs = int(np.array(A.to_lists(), dtype=np.int64).sum()) - int(uu @ S @ vv)
    return lhs, rhs, lhs == rhs


def verify_block_lemma(W: SignMatrix, m: int) -> tuple[int, int, bool]:
    """Optimum over ``W (x) J_m`` against ``m^2`` times the optimum over ``W``."""
    if W.rows != W.cols:
        raise DimensionError("W must be square")
    check_budget("verify_block_lemma", m * W.rows, MAX_GADGET_DIM)
    lhs = max_biclique(kron_allones(W, m)).value
    rhs = m * m * max_biclique(W).value
    return lhs, rhs, lhs == rhs


def verify_lindsey(m: int) -> tuple[int, int, bool]:
    """``max |x^T H y|`` for the Sylvester ``H_m``; holds iff its square is at most ``m^3``."""
    check_budget("verify_lindsey", m, MAX_LINDSEY_M)
    H = sylvester_hadamard(m).array()
    assert (H.T @ H == m * np.eye(m, dtype=np.int64)).all()
    best = _max_abs_bilinear(H)
    bound_sq = m**3
    return best, bound_sq, best * best <= bound_sq


def verify_tilde_gap(W: SignMatrix, m: int) -> tuple[int, int, bool]:
    """Largest ``|u^T W~ v - u^T W' v|`` over binary ``u, v``; holds iff its square is at most ``n^4 m^3``."""
    if W.rows != W.cols:
        raise DimensionError("W must be square")
    n = W.rows
    check_budget("verify_tilde_gap", m * n, MAX_GADGET_DIM)
    gap = tilde_reduction(W, m).array() - kron_allones(W, m).array()
    best = _max_abs_bilinear(gap)
    bound_sq = n**4 * m**3
    return best, bound_sq, best * best <= bound_sq


# .smx text format: "d n" header, then d lines of n space-separated integers in {-1, 0, 1}.


def format_smx(W: SignMatrix) -> str:
    lines = [f"{W.rows} {W.cols}"] + [" ".join(str(x) for x in r) for r in W.entries]
    return "\n".join(lines) + "\n"


def parse_smx(text: str) -> SignMatrix:
    if not text.endswith("\n"):
        raise FormatError("file must end with a newline")
    lines = text[:-1].split("\n")
    header = lines[0].split(" ")
    if len(header) != 2 or not all(t.isdigit() for t in header):
        raise FormatError(f"bad header {lines[0]!r}")
    d, n = int(header[0]), int(header[1])
    if d < 1 or n < 1 or len(lines) - 1 != d:
        raise FormatError(f"expected {d} rows of a {d}x{n} matrix")
    rows = []
    for i, line in enumerate(lines[1:]):
        toks = line.split(" ")
        if len(toks) != n or any(t not in ("-1", "0", "1") for t in toks):
            raise FormatError(f"row {i} must hold {n} values from {{-1,0,1}}")
        rows.append(tuple(int(t) for t in toks))
    return SignMatrix(d, n, tuple(rows))


def read_smx(path: str | os.PathLike) -> SignMatrix:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_smx(fh.read())


def write_smx(path: str | os.PathLike, W: SignMatrix) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(format_smx(W))


def random_sign_matrix(rng, rows: int, cols: int, values: Sequence[int] = (-1, 0, 1)) -> SignMatrix:
    return SignMatrix(rows, cols, tuple(tuple(rng.choice(values) for _ in range(cols)) for _ in range(rows)))
