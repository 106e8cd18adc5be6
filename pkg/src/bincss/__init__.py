"""Low-rank approximation of binary matrices by column subset selection.

GF(2) column subset selection, Boolean generalized column subset selection,
brute-force optimal oracles, worst-case instance generators and small-scale
verifiers for the rank-1 hardness gadgets.
"""

from .bitmat import BitColumn, BitMatrix, bool_mul, gf2_mul, gf2_rank, hamming_dist, make
from .css_gf2 import CssSolution, css_exhaustive, gf2_best_coefficients, ratio_bound
from .errors import BinCssError, BudgetExceeded, DimensionError, FormatError
from .gcss_bool import GcssSolution, bool_best_coefficients, gcss_exhaustive
from .oracle import Factorization, opt_bool, opt_gf2, opt_rank1, rank1_best_column

__all__ = [
    "BinCssError",
    "BitColumn",
    "BitMatrix",
    "BudgetExceeded",
    "CssSolution",
    "DimensionError",
    "Factorization",
    "FormatError",
    "GcssSolution",
    "bool_best_coefficients",
    "bool_mul",
    "css_exhaustive",
    "gcss_exhaustive",
    "gf2_best_coefficients",
    "gf2_mul",
    "gf2_rank",
    "hamming_dist",
    "make",
    "opt_bool",
    "opt_gf2",
    "opt_rank1",
    "rank1_best_column",
    "ratio_bound",
]
