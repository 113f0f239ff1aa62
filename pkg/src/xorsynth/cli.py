"""Command-line front end.

Exit codes: 0 success, 1 negative verdict (not cancellation-free / does
not compute), 2 oracle budget exhausted, 64 usage or input-format error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from . import bounds, cfcheck, gen, oracle, synth
from .circuit import CircuitError, SlpParseError, computes, eliminate, evaluate, parse_slp, serialize_slp
from .gf2 import BitMatrix, BitVector, DimensionError, MatrixFormatError, format_matrix, parse_matrix

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RatioRow:
    seed_index: int
    min_general: Optional[int]
    min_cf: Optional[int]
    ratio: Optional[Fraction]
    status: str


def ratio_experiment(n: int, count: int, density: float = 0.5, seed: int = 0,
                     budget: int | None = None, workers: int = 1,
                     matrices: Sequence[BitMatrix] | None = None) -> list[RatioRow]:
    """Oracle general vs. cancellation-free minima on seeded random n x n
    matrices (instance i uses the i-th SplitMix64 draw of ``seed`` as its
    own seed), or on the given ``matrices`` instead."""
    if matrices is None:
        stream = gen.SplitMix64(seed)
        matrices = [gen.gen_random(n, n, density, stream.next()) for _ in range(count)]
    rows = []
    for i, A in enumerate(matrices):
        g = oracle.min_circuit_size(A, oracle.GENERAL, budget, workers)
        c = oracle.min_circuit_size(A, oracle.CF, budget, workers)
        if g.found and c.found:
            ratio = Fraction(1) if g.min_gates == 0 else Fraction(c.min_gates, g.min_gates)
            rows.append(RatioRow(i, g.min_gates, c.min_gates, ratio, "ok"))
        else:
            rows.append(RatioRow(i, g.min_gates, c.min_gates, None, "exceeds_budget"))
    return rows


def format_ratio_csv(rows: Sequence[RatioRow]) -> str:
    def cell(v):
        return "" if v is None else str(v)

    lines = ["seed_index,min_general,min_cf,ratio,status"]
    for r in rows:
        lines.append(",".join(cell(v) for v in (r.seed_index, r.min_general, r.min_cf, r.ratio, r.status)))
    done = [r.ratio for r in rows if r.status == "ok"]
    if done:
        lines.append(f"max,,,{max(done)},summary")
        lines.append(f"mean,,,{sum(done, Fraction(0)) / len(done)},summary")
    return "\n".join(lines) + "\n"


def _read(path: Optional[str], stdin: TextIO) -> str:
    if path is None or path == "-":
        return stdin.read()
    with open(path) as fh:
        return fh.read()


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="xorsynth", description="Linear XOR circuits over GF(2).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="emit a matrix")
    gsub = g.add_subparsers(dest="family", required=True, parser_class=_Parser)
    gsub.add_parser("sierpinski").add_argument("--k", type=int, required=True)
    gsub.add_parser("prefix").add_argument("--n", type=int, required=True)
    gb = gsub.add_parser("brown")
    gb.add_argument("--p", type=int, required=True)
    gb.add_argument("--delta", type=int)
    gr = gsub.add_parser("random")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--m", type=int)
    gr.add_argument("--density", type=float, default=0.5)
    gr.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("synth", help="build a circuit, SLP on stdout")
    s.add_argument("--method", choices=synth.METHODS, required=True)
    s.add_argument("--block-width", type=int)
    size = s.add_mutually_exclusive_group()
    size.add_argument("--k", type=int)
    size.add_argument("--n", type=int)
    s.add_argument("matrix", nargs="?")

    c = sub.add_parser("check", help="circuit properties")
    csub = c.add_subparsers(dest="property", required=True, parser_class=_Parser)
    csub.add_parser("cf").add_argument("slp", nargs="?")

    v = sub.add_parser("verify", help="does the circuit compute the matrix")
    v.add_argument("matrix")
    v.add_argument("slp", nargs="?")

    e = sub.add_parser("eval", help="evaluate a circuit on an input bit string")
    e.add_argument("--x", required=True, help="input bits x1..xn, e.g. 1011")
    e.add_argument("slp", nargs="?")

    el = sub.add_parser("eliminate", help="zero some inputs and remove dead gates")
    el.add_argument("--zero", required=True, help="comma-separated input indices")
    el.add_argument("slp", nargs="?")

    o = sub.add_parser("oracle", help="exhaustive minimum circuit size")
    o.add_argument("--cf", action="store_true")
    o.add_argument("--budget", type=int)
    o.add_argument("--threads", type=int)
    o.add_argument("matrix", nargs="?")

    b = sub.add_parser("bound", help="lower bounds")
    bsub = b.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    bm = bsub.add_parser("mehlhorn")
    bm.add_argument("--h", type=int, required=True)
    bm.add_argument("--k", type=int, required=True)
    bm.add_argument("matrix", nargs="?")
    bc = bsub.add_parser("counting")
    bc.add_argument("--n", type=int, required=True)
    bc.add_argument("--m", type=int, required=True)
    bsub.add_parser("sierpinski").add_argument("--n", type=int, required=True)

    r = sub.add_parser("ratio", help="cancellation ratio experiment, CSV on stdout")
    r.add_argument("--n", type=int, default=3)
    r.add_argument("--count", type=int, default=20)
    r.add_argument("--density", type=float, default=0.5)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--budget", type=int)
    r.add_argument("--threads", type=int)
    r.add_argument("--matrix", action="append", help="use this matrix file instead (repeatable)")
    return p


def _cmd_gen(args, out, err, stdin) -> int:
    if args.family == "sierpinski":
        A = gen.gen_sierpinski(args.k)
    elif args.family == "prefix":
        A = gen.gen_prefix(args.n)
    elif args.family == "brown":
        A = gen.gen_brown(gen.BrownParams(args.p, args.delta))
    else:
        A = gen.gen_random(args.n, args.m, args.density, args.seed)
    out.write(format_matrix(A))
    return EXIT_OK


def _cmd_synth(args, out, err, stdin) -> int:
    m = args.method
    if m == "sierpinski":
        if args.k is None:
            raise UsageError("--method sierpinski needs --k")
        report = synth.synth_sierpinski(args.k)
    elif m in ("prefix-cancel", "prefix-cf"):
        if args.n is None:
            raise UsageError(f"--method {m} needs --n")
        fn = synth.synth_prefix_cancel if m == "prefix-cancel" else synth.synth_prefix_cf
        report = fn(args.n)
    else:
        A = parse_matrix(_read(args.matrix, stdin))
        if m == "naive":
            report = synth.synth_naive(A)
        elif m == "lupanov":
            report = synth.synth_lupanov(A, args.block_width)
        else:
            report = synth.synth_greedy_cse(A)
    out.write(serialize_slp(report.circuit))
    err.write(report.summary() + "\n")
    return EXIT_OK


def _cmd_check(args, out, err, stdin) -> int:
    C = parse_slp(_read(args.slp, stdin))
    verdict = cfcheck.check_cf(C)
    out.write(("cf " if verdict.is_cf else "not-cf ") + verdict.describe() + "\n")
    return EXIT_OK if verdict.is_cf else EXIT_NEGATIVE


def _cmd_verify(args, out, err, stdin) -> int:
    A = parse_matrix(_read(args.matrix, stdin))
    C = parse_slp(_read(args.slp, stdin))
    try:
        ok = computes(C, A)
    except DimensionError as exc:
        err.write(f"dimension mismatch: {exc}\n")
        ok = False
    out.write("computes\n" if ok else "does-not-compute\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_eval(args, out, err, stdin) -> int:
    C = parse_slp(_read(args.slp, stdin))
    y = evaluate(C, BitVector.from_string(args.x))
    out.write(f"{y}\n")
    return EXIT_OK


def _cmd_eliminate(args, out, err, stdin) -> int:
    C = parse_slp(_read(args.slp, stdin))
    try:
        zeroed = [int(t) for t in args.zero.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad --zero list {args.zero!r}")
    res = eliminate(C, zeroed)
    out.write(serialize_slp(res.reduced))
    names = " ".join(f"t{j}" for j in sorted(res.eliminated)) or "-"
    err.write(f"eliminated={len(res.eliminated)} gates: {names}\n")
    return EXIT_OK


def _cmd_oracle(args, out, err, stdin) -> int:
    A = parse_matrix(_read(args.matrix, stdin))
    mode = oracle.CF if args.cf else oracle.GENERAL
    res = oracle.min_circuit_size(A, mode, args.budget, args.threads)
    if not res.found:
        out.write(f"status=exceeds_budget mode={mode}\n")
        return EXIT_BUDGET
    out.write(f"min={res.min_gates} mode={mode}\n")
    out.write(serialize_slp(res.circuit))
    return EXIT_OK


def _cmd_bound(args, out, err, stdin) -> int:
    if args.kind == "mehlhorn":
        A = parse_matrix(_read(args.matrix, stdin))
        report = bounds.mehlhorn_bound(A, args.h, args.k)
    elif args.kind == "counting":
        report = bounds.counting_bound(args.n, args.m)
    else:
        report = bounds.sierpinski_bound(args.n)
    out.write(report.line() + "\n")
    return EXIT_OK


def _cmd_ratio(args, out, err, stdin) -> int:
    matrices = None
    if args.matrix:
        matrices = [parse_matrix(_read(path, stdin)) for path in args.matrix]
    rows = ratio_experiment(args.n, args.count, args.density, args.seed, args.budget,
                            args.threads or oracle.default_workers(), matrices)
    out.write(format_ratio_csv(rows))
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen, "synth": _cmd_synth, "check": _cmd_check, "verify": _cmd_verify,
    "eval": _cmd_eval, "eliminate": _cmd_eliminate, "oracle": _cmd_oracle,
    "bound": _cmd_bound, "ratio": _cmd_ratio,
}


def run(argv: Sequence[str], stdin: TextIO | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = _build_parser().parse_args(list(argv))
        return _COMMANDS[args.command](args, stdout, stderr, stdin)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (MatrixFormatError, SlpParseError, CircuitError, DimensionError,
            bounds.CombinatorialLimitError, OSError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
