"""Seeded verification suites for the approximation and hardness guarantees.

Each ``run_*`` function takes a small dataclass config, draws its instances from
:class:`~bincss.rng.SplitMix64`, and returns a :class:`CriterionResult` with one
line per trial.  Comparisons are exact (``Fraction`` or integer), never float.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .bitmat import (
    BitColumn,
    BitMatrix,
    bool_mul,
    bool_union_columns,
    from_columns,
    gf2_combine_columns,
    gf2_mul,
    gf2_rank,
    hamming_dist,
)
from .css_gf2 import css_exhaustive, gf2_best_coefficients, ratio_bound, verify_nn_basis_bound
from .gcss_bool import (
    GcssCandidate,
    basis_within_selection,
    bool_best_coefficients,
    e_monotone,
    gcss_bound,
    gcss_exhaustive,
    reconstruction_holds,
)
from .hardness import (
    check_rank1_identity,
    random_sign_matrix,
    verify_block_lemma,
    verify_lindsey,
    verify_tilde_gap,
)
from .instances import (
    DENSITIES,
    expected_css_error_lb,
    lower_bound_instance,
    negated_identity,
    planted,
    random_bernoulli,
    random_bits,
)
from .oracle import opt_bool, opt_gf2, opt_rank1, opt_search_cost, rank1_best_column
from .rng import SplitMix64


@dataclass
class CriterionResult:
    name: str
    trials: int = 0
    violations: int = 0
    lines: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0
    time_limit: float | None = None

    @property
    def passed(self) -> bool:
        return self.trials > 0 and self.violations == 0

    def record(self, ok: bool, line: str) -> None:
        self.trials += 1
        if not ok:
            self.violations += 1
        self.lines.append(("ok   " if ok else "FAIL ") + line)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.time_limit:.0f}s)" if self.time_limit else ""
        return (
            f"[{status}] {self.name}: {self.trials} checks, {self.violations} violations, "
            f"{self.elapsed:.1f}s{limit}"
        )


class _timed:
    def __init__(self, result: CriterionResult):
        self.result = result

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.result

    def __exit__(self, *exc):
        self.result.elapsed = time.perf_counter() - self.t0
        return False


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _random_instance(rng: SplitMix64, k: int, dmax: int, nmax: int, densities) -> tuple[BitMatrix, Fraction]:
    # k + 1 keeps most instances off the trivial exact-rank case
    d = rng.between(min(k + 1, dmax), dmax)
    n = rng.between(min(k + 1, nmax), nmax)
    p = rng.choice(densities)
    return random_bernoulli(d, n, p, rng.next_u64()), p


@dataclass
class CssRatioConfig:
    trials: int = 300
    dmax: int = 7
    nmax: int = 9
    kset: tuple[int, ...] = (1, 2)
    densities: tuple[Fraction, ...] = DENSITIES
    seed: int = 1
    time_limit: float = 60.0


def run_css_ratio(cfg: CssRatioConfig = CssRatioConfig()) -> CriterionResult:
    """Exhaustive GF(2) CSS error is at most ``ratio_bound(k)`` times the optimum."""
    res = CriterionResult("GF(2) CSS ratio bound", time_limit=cfg.time_limit)
    rng = SplitMix64(cfg.seed)
    with _timed(res):
        for t in range(cfg.trials):
            k = cfg.kset[t % len(cfg.kset)]
            A, p = _random_instance(rng, k, cfg.dmax, cfg.nmax, cfg.densities)
            css = css_exhaustive(A, k).error
            opt = opt_gf2(A, k).error
            bound = ratio_bound(k)
            res.record(
                css <= bound * opt,
                f"trial {t} d={A.rows} n={A.cols} k={k} p={_fmt(p)} css={css} opt={opt} bound={_fmt(bound)}",
            )
    return res


@dataclass
class LowerBoundConfig:
    cases: tuple[tuple[int, int], ...] = ((1, 6), (1, 8), (2, 18))
    opt_budget: int = 10**7
    time_limit: float = 30.0


def check_lower_bound_case(res: CriterionResult, k: int, n: int, opt_budget: int) -> None:
    inst = lower_bound_instance(k, n)
    LR = gf2_mul(inst.L, inst.R)
    witness = hamming_dist(inst.A, LR)
    res.record(witness == n, f"k={k} n={n} |A - LR| = {witness} (expect {n})")
    css = css_exhaustive(inst.A, k).error
    expected = expected_css_error_lb(k, n)
    if k == 1:
        res.record(css == expected, f"k={k} n={n} css={css} closed form={expected}")
    else:
        low = min(inst.p * inst.q - n, expected)
        res.record(low <= css <= expected, f"k={k} n={n} css={css} in [{low}, {expected}]")
    if opt_search_cost(n, n, k) <= opt_budget:
        opt = opt_gf2(inst.A, k).error
        target = ratio_bound(k) - Fraction(2 * k, n)
        ok = opt > 0 and Fraction(css, opt) >= target
        ratio = _fmt(Fraction(css, opt)) if opt else "undefined"
        res.record(ok, f"k={k} n={n} opt={opt} ratio={ratio} >= {_fmt(target)}")
    else:
        # OPT <= n by the L R witness, so css / n bounds the ratio from below
        res.record(Fraction(css, n) >= 2, f"k={k} n={n} css/n={_fmt(Fraction(css, n))} >= 2 (OPT <= n witness)")


def run_lower_bound(cfg: LowerBoundConfig = LowerBoundConfig()) -> CriterionResult:
    res = CriterionResult("CSS lower-bound construction", time_limit=cfg.time_limit)
    with _timed(res):
        for k, n in cfg.cases:
            check_lower_bound_case(res, k, n, cfg.opt_budget)
    return res


@dataclass
class NNBasisConfig:
    trials: int = 100
    dmax: int = 7
    nmax: int = 8
    k: int = 2
    densities: tuple[Fraction, ...] = DENSITIES
    seed: int = 3
    time_limit: float = 60.0


def run_nn_basis(cfg: NNBasisConfig = NNBasisConfig()) -> CriterionResult:
    """Some invertible change of basis of an optimal ``U`` induces a nearest-neighbour basis within ``1 + lambda_k``."""
    res = CriterionResult("nearest-neighbour basis bound", time_limit=cfg.time_limit)
    rng = SplitMix64(cfg.seed)
    with _timed(res):
        for t in range(cfg.trials):
            A, p = _random_instance(rng, cfg.k, cfg.dmax, cfg.nmax, cfg.densities)
            opt = opt_gf2(A, cfg.k)
            best, holds = verify_nn_basis_bound(A, cfg.k, opt.error, opt.U)
            res.record(holds, f"trial {t} d={A.rows} n={A.cols} p={_fmt(p)} induced={best} opt={opt.error}")
    return res


@dataclass
class GcssRatioConfig:
    trials: int = 200
    dmax: int = 6
    nmax: int = 7
    kset: tuple[int, ...] = (1, 2)
    densities: tuple[Fraction, ...] = DENSITIES
    seed: int = 4
    time_limit: float = 300.0
    check_candidates: bool = False


@dataclass
class CandidateTally:
    candidates: int = 0
    monotone_fail: int = 0
    reconstruction_fail: int = 0
    containment_fail: int = 0

    def __call__(self, c: GcssCandidate) -> None:
        self.candidates += 1
        self.monotone_fail += not e_monotone(c)
        self.reconstruction_fail += not reconstruction_holds(c)
        self.containment_fail += not basis_within_selection(c)

    @property
    def failures(self) -> int:
        return self.monotone_fail + self.reconstruction_fail + self.containment_fail


def run_gcss_ratio(cfg: GcssRatioConfig = GcssRatioConfig()) -> CriterionResult:
    """GCSS error is at most ``2^k`` times the Boolean optimum.

    With ``check_candidates`` every built candidate also goes through the
    structural checks; the tally lands in ``details["tally"]``.
    """
    res = CriterionResult("Boolean GCSS ratio bound", time_limit=cfg.time_limit)
    rng = SplitMix64(cfg.seed)
    tally = CandidateTally() if cfg.check_candidates else None
    with _timed(res):
        for t in range(cfg.trials):
            k = cfg.kset[t % len(cfg.kset)]
            A, p = _random_instance(rng, k, cfg.dmax, cfg.nmax, cfg.densities)
            g = gcss_exhaustive(A, k, on_candidate=tally).error
            opt = opt_bool(A, k).error
            res.record(
                g <= gcss_bound(k) * opt,
                f"trial {t} d={A.rows} n={A.cols} k={k} p={_fmt(p)} gcss={g} opt={opt} bound={gcss_bound(k)}",
            )
    res.details["tally"] = tally
    return res


@dataclass
class RecoveryConfig:
    trials: int = 100
    gf2_dims: tuple[int, int] = (7, 9)
    bool_dims: tuple[int, int] = (6, 7)
    kset: tuple[int, ...] = (1, 2)
    seed: int = 5
    time_limit: float = 120.0


def run_exact_recovery(cfg: RecoveryConfig = RecoveryConfig()) -> CriterionResult:
    res = CriterionResult("exact-rank recovery", time_limit=cfg.time_limit)
    rng = SplitMix64(cfg.seed)
    with _timed(res):
        for semiring, (dmax, nmax) in (("gf2", cfg.gf2_dims), ("boolean", cfg.bool_dims)):
            for t in range(cfg.trials):
                k = cfg.kset[t % len(cfg.kset)]
                d, n = rng.between(k, dmax), rng.between(k, nmax)
                A, _, _ = planted(d, n, k, semiring, 0, rng.next_u64())
                if semiring == "gf2":
                    err = css_exhaustive(A, k).error
                else:
                    err = gcss_exhaustive(A, k).error
                res.record(err == 0, f"{semiring} trial {t} d={d} n={n} k={k} error={err}")
    return res


@dataclass
class NegIdConfig:
    ks: tuple[int, ...] = (2, 4)
    time_limit: float = 5.0


def run_negated_identity(cfg: NegIdConfig = NegIdConfig()) -> CriterionResult:
    res = CriterionResult("negated identity factorization", time_limit=cfg.time_limit)
    with _timed(res):
        for k in cfg.ks:
            inst = negated_identity(k)
            exact = bool_mul(inst.U, inst.V) == inst.A
            res.record(exact, f"k={k} n={inst.n} U V == A: {exact}")
            if k == 2:
                e1 = opt_bool(inst.A, 1).error
                res.record(e1 > 0, f"k=2 rank-1 Boolean optimum {e1} > 0")
    return res


@dataclass
class HardnessConfig:
    block_trials: int = 50
    block_shapes: tuple[tuple[int, int], ...] = ((2, 2), (2, 4), (3, 2), (3, 4))
    lindsey_ms: tuple[int, ...] = (1, 2, 4, 8)
    gap_trials: int = 20
    gap_n: int = 2
    gap_ms: tuple[int, ...] = (2, 4)
    identity_trials: int = 1000
    identity_dmax: int = 10
    seed: int = 7
    time_limit: float = 60.0


def run_hardness(cfg: HardnessConfig = HardnessConfig()) -> CriterionResult:
    res = CriterionResult("hardness lemmas", time_limit=cfg.time_limit)
    rng = SplitMix64(cfg.seed)
    with _timed(res):
        for t in range(cfg.block_trials):
            n, m = cfg.block_shapes[t % len(cfg.block_shapes)]
            W = random_sign_matrix(rng, n, n)
            lhs, rhs, eq = verify_block_lemma(W, m)
            res.record(eq, f"block trial {t} n={n} m={m} max(W(x)J)={lhs} m^2 max(W)={rhs}")
        for m in cfg.lindsey_ms:
            best, bound_sq, holds = verify_lindsey(m)
            res.record(holds, f"lindsey m={m} max|xHy|={best} squared<= {bound_sq}")
        for t in range(cfg.gap_trials):
            m = cfg.gap_ms[t % len(cfg.gap_ms)]
            W = random_sign_matrix(rng, cfg.gap_n, cfg.gap_n)
            gap, bound_sq, holds = verify_tilde_gap(W, m)
            res.record(holds, f"gap trial {t} n={cfg.gap_n} m={m} gap={gap} squared<= {bound_sq}")
        bad = 0
        for _ in range(cfg.identity_trials):
            d, n = rng.between(1, cfg.identity_dmax), rng.between(1, cfg.identity_dmax)
            A = random_bits(rng, d, n)
            u = BitColumn(d, rng.next_u64() & ((1 << d) - 1))
            v = BitColumn(n, rng.next_u64() & ((1 << n) - 1))
            _, _, eq = check_rank1_identity(A, u, v)
            bad += not eq
        res.record(bad == 0, f"rank-1 identity on {cfg.identity_trials} random (A, u, v): {bad} mismatches")
    return res


@dataclass
class Rank1Config:
    trials: int = 300
    dmax: int = 12
    nmax: int = 12
    equivalence_trials: int = 100
    equivalence_dmax: int = 10
    equivalence_nmax: int = 10
    densities: tuple[Fraction, ...] = DENSITIES
    seed: int = 8
    time_limit: float = 60.0


def run_rank1(cfg: Rank1Config = Rank1Config()) -> CriterionResult:
    res = CriterionResult("rank-1 best column 2-approximation", time_limit=cfg.time_limit)
    rng = SplitMix64(cfg.seed)
    with _timed(res):
        for t in range(cfg.trials):
            A, p = _random_instance(rng, 1, cfg.dmax, cfg.nmax, cfg.densities)
            _, _, col = rank1_best_column(A)
            opt = opt_rank1(A).error
            res.record(col <= 2 * opt, f"trial {t} d={A.rows} n={A.cols} p={_fmt(p)} column={col} opt={opt}")
        for t in range(cfg.equivalence_trials):
            A, p = _random_instance(rng, 1, cfg.equivalence_dmax, cfg.equivalence_nmax, cfg.densities)
            r1, g1, b1 = opt_rank1(A).error, opt_gf2(A, 1).error, opt_bool(A, 1).error
            res.record(r1 == g1 == b1, f"equivalence {t} d={A.rows} n={A.cols} rank1={r1} gf2={g1} bool={b1}")
    return res


@dataclass
class InvariantConfig:
    gcss: GcssRatioConfig = field(default_factory=lambda: GcssRatioConfig(check_candidates=True))
    coefficient_cases: int = 300
    coefficient_dmax: int = 8
    coefficient_nmax: int = 8
    algebra_cases: int = 500
    seed: int = 9
    time_limit: float = 300.0


def _coefficients_optimal(P: BitMatrix, A: BitMatrix, Q: BitMatrix, err: int, semiring: str) -> bool:
    combine = gf2_combine_columns if semiring == "gf2" else bool_union_columns
    k = P.cols
    options = [combine(P, BitColumn(k, c)).bits for c in range(1 << k)]
    total = 0
    for j, a in enumerate(A.columns):
        chosen = (a ^ options[Q.columns[j]]).bit_count()
        if any((a ^ o).bit_count() < chosen for o in options):
            return False
        total += chosen
    return total == err


def _random_shape(rng: SplitMix64, hi: int) -> int:
    return rng.between(1, hi)


def run_invariants(cfg: InvariantConfig = InvariantConfig(), gcss_result: CriterionResult | None = None) -> CriterionResult:
    """Structural checks: GCSS candidate identities, coefficient optimality, bit-matrix algebra.

    Pass the result of a :func:`run_gcss_ratio` run made with ``check_candidates``
    to reuse its candidate tally instead of rerunning it.
    """
    res = CriterionResult("structural invariants", time_limit=cfg.time_limit)
    rng = SplitMix64(cfg.seed)
    with _timed(res):
        if gcss_result is None or gcss_result.details.get("tally") is None:
            gcss_result = run_gcss_ratio(cfg.gcss)
        tally: CandidateTally = gcss_result.details["tally"]
        res.record(
            tally.candidates > 0 and tally.monotone_fail == 0,
            f"E monotone on {tally.candidates} candidates ({tally.monotone_fail} failures)",
        )
        res.record(
            tally.reconstruction_fail == 0,
            f"union of B over S_l reconstructs from E and F on {tally.candidates} candidates "
            f"({tally.reconstruction_fail} failures)",
        )
        res.record(
            tally.containment_fail == 0,
            f"B inside union of selected columns on {tally.candidates} candidates ({tally.containment_fail} failures)",
        )

        for semiring, solve in (("gf2", gf2_best_coefficients), ("boolean", bool_best_coefficients)):
            bad = 0
            for t in range(cfg.coefficient_cases):
                k = 1 + t % 3
                d, n = _random_shape(rng, cfg.coefficient_dmax), _random_shape(rng, cfg.coefficient_nmax)
                P, A = random_bits(rng, d, k), random_bits(rng, d, n)
                Q, err = solve(P, A)
                bad += not _coefficients_optimal(P, A, Q, err, semiring)
            res.record(bad == 0, f"{semiring} coefficient optimality, {cfg.coefficient_cases} cases k<=3: {bad} failures")

        N = cfg.algebra_cases
        bad_gf2 = bad_bool = bad_mono = 0
        for _ in range(N):
            a, b, c, e = (_random_shape(rng, 6) for _ in range(4))
            X, Y, Z = random_bits(rng, a, b), random_bits(rng, b, c), random_bits(rng, c, e)
            bad_gf2 += gf2_mul(gf2_mul(X, Y), Z) != gf2_mul(X, gf2_mul(Y, Z))
            bad_bool += bool_mul(bool_mul(X, Y), Z) != bool_mul(X, bool_mul(Y, Z))
            i, j = rng.below(a), rng.below(b)
            X2 = BitMatrix(a, b, tuple(r | (1 << j) if ri == i else r for ri, r in enumerate(X.data)))
            before, after = bool_mul(X, Y), bool_mul(X2, Y)
            bad_mono += any(p & ~q for p, q in zip(before.data, after.data))
        res.record(bad_gf2 == 0, f"gf2_mul associative on {N} triples: {bad_gf2} failures")
        res.record(bad_bool == 0, f"bool_mul associative on {N} triples: {bad_bool} failures")
        res.record(bad_mono == 0, f"bool_mul monotone on {N} cases: {bad_mono} failures")

        bad_metric = 0
        for _ in range(N):
            d, n = _random_shape(rng, 8), _random_shape(rng, 8)
            X, Y, Z = (random_bits(rng, d, n) for _ in range(3))
            dxy, dyx = hamming_dist(X, Y), hamming_dist(Y, X)
            ok = (
                dxy == dyx
                and hamming_dist(X, X) == 0
                and (dxy > 0) == (X != Y)
                and hamming_dist(X, Z) <= dxy + hamming_dist(Y, Z)
            )
            bad_metric += not ok
        res.record(bad_metric == 0, f"Hamming metric axioms on {N} triples: {bad_metric} failures")

        bad_lin = 0
        for _ in range(N):
            k = rng.between(1, 4)
            P = random_bits(rng, _random_shape(rng, 8), k)
            for c1 in range(1 << k):
                for c2 in range(1 << k):
                    lhs = gf2_combine_columns(P, BitColumn(k, c1 ^ c2))
                    rhs = gf2_combine_columns(P, BitColumn(k, c1)) ^ gf2_combine_columns(P, BitColumn(k, c2))
                    bad_lin += lhs != rhs
        res.record(bad_lin == 0, f"gf2_combine_columns linear on {N} bases (all coefficient pairs): {bad_lin} failures")

        bad_rank = 0
        for _ in range(N):
            d, n = _random_shape(rng, 8), _random_shape(rng, 8)
            X = random_bits(rng, d, n)
            r = gf2_rank(X)
            perm = list(range(n))
            for i in range(n - 1, 0, -1):
                j = rng.below(i + 1)
                perm[i], perm[j] = perm[j], perm[i]
            Xp = from_columns(d, [X.columns[j] for j in perm])
            bad_rank += not (r <= min(d, n) and gf2_rank(Xp) == r and gf2_rank(X.T) == r)
        res.record(bad_rank == 0, f"gf2_rank bounded and permutation invariant on {N} cases: {bad_rank} failures")
    return res


SUITES = {
    "thm1": run_css_ratio,
    "thm2-instance": run_lower_bound,
    "thm3": run_nn_basis,
    "thm4": run_gcss_ratio,
    "exact-recovery": run_exact_recovery,
    "negid": run_negated_identity,
    "hardness-lemmas": run_hardness,
    "rank1-2approx": run_rank1,
    "invariants": run_invariants,
}
