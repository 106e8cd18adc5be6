"""Command line: ``bincss gen | solve | verify``.

Generator and verifier parameters are ``key=value`` tokens, e.g.::

    bincss gen lowerbound k=1 n=6 --out A.bmx
    bincss solve css-gf2 A.bmx k=1 --with-opt
    bincss verify thm1 trials=300 dmax=7 nmax=9 kset=1,2 seed=1

Randomized generators and verifiers take ``seed=``; when it is omitted the
seed is 0.  ``gen tilde`` turns a ``.smx`` sign matrix ``W`` into the binary
matrix ``(W~ + J) / 2`` of the Hadamard-replacement gadget.

Every command prints one JSON report on stdout.  Exit codes: 0 success,
2 verification failure, 3 budget refusal, 4 input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import verify
from .bitmat import BitMatrix, format_bmx, read_bmx, write_bmx
from .css_gf2 import css_exhaustive, css_search_cost
from .errors import BudgetExceeded, FormatError
from .gcss_bool import gcss_exhaustive, gcss_search_cost
from .hardness import binary_from_sign, read_smx, tilde_reduction
from .instances import lower_bound_instance, negated_identity, planted, random_bernoulli
from .oracle import opt_bool, opt_gf2, opt_rank1, opt_search_cost, rank1_best_column

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_BUDGET = 3
EXIT_INPUT = 4

CLI_BUDGET = 5 * 10**7

SOLVERS = ("css-gf2", "gcss-bool", "opt-gf2", "opt-bool", "rank1-opt", "rank1-col")
GENERATORS = ("lowerbound", "negid", "planted", "bernoulli", "tilde")


class InputError(Exception):
    pass


@dataclasses.dataclass
class RunReport:
    command: list[str]
    input_digest: str | None = None
    solver: str | None = None
    k: int | None = None
    error: int | None = None
    opt_error: int | None = None
    ratio_vs_opt: dict | str | None = None
    witness: dict | None = None
    elapsed_seconds: float = 0.0
    budget_consumed: int | None = None
    passed: bool | None = None
    trials: list[str] | None = None

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True)


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("ascii")).hexdigest()


def _rows(A: BitMatrix) -> list[str]:
    return format_bmx(A).splitlines()[1:]


def ratio_field(error: int, opt: int) -> dict | str | None:
    if opt == 0:
        return "exact" if error == 0 else None
    q = Fraction(error, opt)
    return {"numerator": q.numerator, "denominator": q.denominator}


def parse_params(tokens: list[str]) -> dict[str, str]:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not key or not value:
            raise InputError(f"expected key=value, got {tok!r}")
        if key in out:
            raise InputError(f"parameter {key!r} given twice")
        out[key] = value
    return out


class _Params:
    def __init__(self, raw: dict[str, str]):
        self.raw = dict(raw)
        self.used: set[str] = set()

    def int(self, key: str, default=None) -> int:
        if key not in self.raw:
            if default is None:
                raise InputError(f"missing parameter {key}=")
            return default
        self.used.add(key)
        try:
            return int(self.raw[key])
        except ValueError:
            raise InputError(f"{key} must be an integer, got {self.raw[key]!r}") from None

    def ints(self, key: str, default=None) -> tuple[int, ...]:
        if key not in self.raw:
            if default is None:
                raise InputError(f"missing parameter {key}=")
            return default
        self.used.add(key)
        try:
            return tuple(int(x) for x in self.raw[key].split(","))
        except ValueError:
            raise InputError(f"{key} must be a comma-separated list of integers") from None

    def str(self, key: str, default=None) -> str:
        if key not in self.raw:
            if default is None:
                raise InputError(f"missing parameter {key}=")
            return default
        self.used.add(key)
        return self.raw[key]

    def fraction(self, key: str, default=None) -> Fraction:
        text = self.str(key, default)
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{key} must be a rational such as 1/4 or 0.25, got {text!r}") from None

    def finish(self) -> None:
        extra = set(self.raw) - self.used
        if extra:
            raise InputError(f"unknown parameter(s): {', '.join(sorted(extra))}")


def _companion(out: Path, tag: str) -> Path:
    return out.with_name(f"{out.stem}.{tag}{out.suffix or '.bmx'}")


def cmd_gen(args, report: RunReport) -> int:
    params = _Params(parse_params(args.params))
    out = Path(args.out or f"{args.kind}.bmx")
    files: dict[str, BitMatrix] = {}
    try:
        if args.kind == "lowerbound":
            inst = lower_bound_instance(params.int("k"), params.int("n"))
            files[str(out)] = inst.A
            if args.export_factors:
                files[str(_companion(out, "L"))] = inst.L
                files[str(_companion(out, "R"))] = inst.R
            report.k = inst.k
        elif args.kind == "negid":
            inst = negated_identity(params.int("k"))
            files[str(out)] = inst.A
            files[str(_companion(out, "U"))] = inst.U
            files[str(_companion(out, "V"))] = inst.V
            report.k = inst.k
        elif args.kind == "planted":
            k = params.int("k")
            A, U0, V0 = planted(
                params.int("d"), params.int("n"), k, params.str("semiring", "gf2"),
                params.fraction("flip", "0"), params.int("seed", 0),
            )
            files[str(out)] = A
            files[str(_companion(out, "U"))] = U0
            files[str(_companion(out, "V"))] = V0
            report.k = k
        elif args.kind == "tilde":
            W = read_smx(params.str("smx"))
            files[str(out)] = binary_from_sign(tilde_reduction(W, params.int("m")))
        else:
            A = random_bernoulli(params.int("d"), params.int("n"), params.fraction("p"), params.int("seed", 0))
            files[str(out)] = A
        params.finish()
    except OSError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise InputError(str(exc)) from None
    for path, M in files.items():
        try:
            write_bmx(path, M)
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc}") from None
    report.input_digest = digest(format_bmx(files[str(out)]))
    report.witness = {"files": sorted(files), "shape": list(files[str(out)].shape)}
    return EXIT_OK


def _solve(solver: str, A: BitMatrix, k: int, budget: int, jobs: int):
    """Run one solver; returns ``(error, witness, planned evaluations)``."""
    d, n = A.shape
    if solver == "css-gf2":
        sol = css_exhaustive(A, k, budget=budget, workers=jobs)
        return sol.error, {"subset": list(sol.subset), "Q": _rows(sol.Q)}, css_search_cost(n, k)
    if solver == "gcss-bool":
        sol = gcss_exhaustive(A, k, budget=budget, workers=jobs)
        witness = {
            "selection": list(sol.selection),
            "pi": list(sol.pi),
            "pi_rank": sol.pi_rank,
            "B": _rows(sol.B),
            "Q": _rows(sol.Q),
        }
        return sol.error, witness, gcss_search_cost(n, k)
    if solver in ("opt-gf2", "opt-bool"):
        f = (opt_gf2 if solver == "opt-gf2" else opt_bool)(A, k, budget=budget)
        return f.error, {"U": _rows(f.U), "V": _rows(f.V)}, opt_search_cost(d, n, k)
    if k != 1:
        raise InputError(f"{solver} is rank-1 only; got k={k}")
    if solver == "rank1-opt":
        f = opt_rank1(A, budget=budget)
        return f.error, {"u": _rows(f.U.T)[0], "v": _rows(f.V)[0]}, (1 << d) * n
    idx, v, err = rank1_best_column(A)
    return err, {"column": idx, "v": _rows(v)[0]}, n * n


_ORACLE_FOR = {
    "css-gf2": "opt-gf2",
    "gcss-bool": "opt-bool",
    "opt-gf2": "opt-gf2",
    "opt-bool": "opt-bool",
    "rank1-opt": "rank1-opt",
    "rank1-col": "rank1-opt",
}


def cmd_solve(args, report: RunReport) -> int:
    paths = [t for t in args.operands if "=" not in t]
    if len(paths) != 1:
        raise InputError(f"expected exactly one input .bmx path, got {len(paths)}")
    try:
        A = read_bmx(paths[0])
    except OSError as exc:
        raise InputError(f"cannot read {paths[0]}: {exc}") from None
    report.input_digest = digest(format_bmx(A))
    params = _Params(parse_params([t for t in args.operands if "=" in t]))
    k = params.int("k", args.k if args.k is not None else 1)
    params.finish()
    report.solver = args.solver
    report.k = k
    if k < 1:
        raise InputError("k must be >= 1")
    if args.jobs < 1:
        raise InputError("--jobs must be >= 1")
    try:
        err, witness, cost = _solve(args.solver, A, k, args.budget, args.jobs)
    except (ValueError, IndexError) as exc:
        raise InputError(str(exc)) from None
    report.error = err
    report.witness = witness
    report.budget_consumed = cost
    if args.with_opt:
        opt_err, _, opt_cost = _solve(_ORACLE_FOR[args.solver], A, k, args.budget, 1)
        report.opt_error = opt_err
        report.ratio_vs_opt = ratio_field(err, opt_err)
        report.budget_consumed += opt_cost
    return EXIT_OK


def _verify_config(suite: str, params: _Params):
    """Map ``key=value`` parameters onto the suite's config dataclass."""
    if suite == "thm2-instance":
        if "k" in params.raw or "n" in params.raw:
            return verify.LowerBoundConfig(cases=((params.int("k"), params.int("n")),))
        return verify.LowerBoundConfig()
    if suite == "hardness-lemmas":
        cfg = verify.HardnessConfig()
        if "n" in params.raw or "m" in params.raw:
            n = params.int("n", 2)
            ms = params.ints("m", (2, 4))
            cfg = dataclasses.replace(cfg, block_shapes=tuple((n, m) for m in ms), gap_n=n, gap_ms=ms)
        for key in ("block_trials", "gap_trials", "identity_trials", "seed"):
            if key in params.raw:
                cfg = dataclasses.replace(cfg, **{key: params.int(key)})
        if "lindsey" in params.raw:
            cfg = dataclasses.replace(cfg, lindsey_ms=params.ints("lindsey"))
        return cfg
    config_cls = {
        "thm1": verify.CssRatioConfig,
        "thm3": verify.NNBasisConfig,
        "thm4": verify.GcssRatioConfig,
        "exact-recovery": verify.RecoveryConfig,
        "negid": verify.NegIdConfig,
        "rank1-2approx": verify.Rank1Config,
        "invariants": verify.InvariantConfig,
    }[suite]
    fields = {f.name: f for f in dataclasses.fields(config_cls)}
    values = {}
    for key in list(params.raw):
        if key not in fields:
            continue
        if key in ("kset", "ks"):
            values[key] = params.ints(key)
        elif fields[key].type in ("int", int):
            values[key] = params.int(key)
    return config_cls(**values)


def cmd_verify(args, report: RunReport) -> int:
    params = _Params(parse_params(args.params))
    cfg = _verify_config(args.suite, params)
    if "seed" not in params.raw and any(f.name == "seed" for f in dataclasses.fields(cfg)):
        cfg = dataclasses.replace(cfg, seed=0)
    params.finish()
    try:
        result = verify.SUITES[args.suite](cfg)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report.solver = args.suite
    report.passed = result.passed
    report.trials = result.lines + [result.summary()]
    return EXIT_OK if result.passed else EXIT_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bincss", description="Binary low-rank approximation by column subset selection.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a generated instance as .bmx")
    g.add_argument("kind", choices=GENERATORS)
    g.add_argument("params", nargs="*", help="key=value generator parameters")
    g.add_argument("--out", default=None, help="output .bmx path (default: KIND.bmx)")
    g.add_argument("--export-factors", action="store_true", help="lowerbound: also write the L and R factors")

    s = sub.add_parser("solve", help="run a solver on a .bmx file")
    s.add_argument("solver", choices=SOLVERS)
    s.add_argument("operands", nargs="+", metavar="INPUT|k=K", help="input .bmx path and optionally k=K (default 1)")
    s.add_argument("--k", type=int, default=None, help="same as k=K")
    s.add_argument("--with-opt", action="store_true", help="also run the exact oracle and report the ratio")
    s.add_argument("--budget", type=int, default=CLI_BUDGET, help="maximum column-cost evaluations")
    s.add_argument("--jobs", type=int, default=1, help="worker processes; results do not depend on it")

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("suite", choices=tuple(verify.SUITES))
    v.add_argument("params", nargs="*", help="key=value suite parameters (trials=, seed=, kset=, ...)")
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    report = RunReport(command=["bincss", *argv])
    t0 = time.perf_counter()
    handler = {"gen": cmd_gen, "solve": cmd_solve, "verify": cmd_verify}[args.command]
    try:
        code = handler(args, report)
    except BudgetExceeded as exc:
        print(f"bincss: budget refused: {exc}", file=sys.stderr)
        report.budget_consumed = exc.required
        code = EXIT_BUDGET
    except (InputError, FormatError) as exc:
        print(f"bincss: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report.elapsed_seconds = round(time.perf_counter() - t0, 6)
    print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
