"""Command-line front end.

Exit codes: 0 success, 1 parse/domain error, 2 length mismatch,
3 undefined correlation, 4 AP correlation requested on tied scores.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import experiments
from .apcorr import ap_correlation, symmetric_ap
from .engine import CorrelationBreakdown, compute_breakdown, gamma_value, tau_value
from .errors import (
    DomainError,
    LengthMismatchError,
    ParseError,
    TiesError,
    UndefinedCorrelationError,
)
from .scores import check_lengths, lex_rank, read_ranks, read_scores, truncate_ranks
from .weights import get_scheme

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_LENGTH = 2
EXIT_UNDEFINED = 3
EXIT_TIES = 4

ORACLE_MAX_N = 5000


def format_value(value: float, precision: int) -> str:
    if math.isnan(value):
        return "nan"
    return f"{value:.{precision}f}"


@dataclass
class Measurement:
    value: float
    breakdowns: list[tuple[str, CorrelationBreakdown]]


def _rank_choices(r, s, mode: str, top_k: int | None):
    """Rankings to average over, as ``(label, ranks)`` pairs."""
    if mode.startswith("file:"):
        ranks = read_ranks(mode[len("file:"):])
        check_lengths(r, ranks)
        labels = [("external", ranks)]
    elif mode == "symmetric":
        labels = [("first", "first"), ("second", "second")]
    elif mode in ("first", "second"):
        labels = [(mode, mode)]
    else:
        raise DomainError(f"unknown rank mode {mode!r}")
    if top_k is None:
        return labels
    out = []
    for label, ranks in labels:
        if isinstance(ranks, str):
            ranks = lex_rank(r, s) if ranks == "first" else lex_rank(s, r)
        out.append((label, truncate_ranks(ranks, top_k)))
    return out


def _explicit(r, s, ranks):
    if isinstance(ranks, str):
        return lex_rank(r, s) if ranks == "first" else lex_rank(s, r)
    return ranks


def _oracle_check(r, s, choices, scheme, breakdowns):
    from .oracle import oracle_breakdown

    if len(r) > ORACLE_MAX_N:
        print(f"note: --oracle skipped, n={len(r)} exceeds {ORACLE_MAX_N}", file=sys.stderr)
        return
    for (label, ranks), (_, bd) in zip(choices, breakdowns):
        ref = oracle_breakdown(r, s, _explicit(r, s, ranks), scheme)
        tol = 1e-9 * max(1.0, ref.T)
        for field in "TLRJD":
            got, want = getattr(bd, field), getattr(ref, field)
            if abs(got - want) > tol:
                raise RuntimeError(
                    f"oracle mismatch on {label} ranking: {field}={got!r}, brute force {want!r}"
                )


def _check_ap_ties(named):
    for name, v in named:
        if np.unique(v).size != v.size:
            raise TiesError(f"AP correlation is undefined on ties: {name} has tied scores")


def measure(r, s, args, names=("a", "b")) -> Measurement:
    """Compute the correlation selected by the command-line flags."""
    check_lengths(r, s)
    if args.measure == "ap":
        _check_ap_ties(zip(names, (r, s)))
        if args.rank == "symmetric":
            return Measurement(symmetric_ap(r, s), [])
        if args.rank == "first":
            return Measurement(ap_correlation(s, r), [])
        if args.rank == "second":
            return Measurement(ap_correlation(r, s), [])
        raise DomainError("AP correlation supports --rank symmetric|first|second only")

    scheme = get_scheme(args.weight, args.combine)
    choices = _rank_choices(r, s, args.rank, args.top_k)
    breakdowns = [(label, compute_breakdown(r, s, ranks, scheme)[0]) for label, ranks in choices]
    if args.measure == "tau":
        values = [tau_value(bd, r, s) for _, bd in breakdowns]
    else:
        values = [gamma_value(bd) for _, bd in breakdowns]
    value = values[0] if len(values) == 1 else (values[0] + values[1]) / 2
    if getattr(args, "oracle", False):
        _oracle_check(r, s, choices, scheme, breakdowns)
    return Measurement(value, breakdowns)


def _nonstandard_note(args, r, s):
    if args.measure != "ap" and args.weight == "ap":
        if np.unique(r).size != r.size or np.unique(s).size != s.size:
            print("note: AP weighting on tied scores is a non-standard index", file=sys.stderr)


def _read(path, args):
    try:
        return read_scores(path, column=args.column, delimiter=args.delimiter)
    except (ParseError, DomainError) as exc:
        raise type(exc)(f"{path}: {exc}") from None


def cmd_tau(args) -> int:
    r = _read(args.file_a, args)
    s = _read(args.file_b, args)
    _nonstandard_note(args, r, s)
    result = measure(r, s, args, names=(args.file_a, args.file_b))
    print(format_value(result.value, args.precision))
    if args.breakdown:
        for label, bd in result.breakdowns:
            fields = "\t".join(f"{k}={getattr(bd, k)!r}" for k in "TLRJD")
            print(f"{label}\t{fields}")
    return EXIT_OK


def cmd_ap(args) -> int:
    args.measure = "ap"
    if args.symmetric:
        args.rank = "symmetric"
    else:
        # AP correlation of the first file with respect to the second
        args.rank = "second"
    r = _read(args.file_a, args)
    s = _read(args.file_b, args)
    print(format_value(measure(r, s, args, (args.file_a, args.file_b)).value, args.precision))
    return EXIT_OK


def matrix_values(vectors, args, threads: int | None = None) -> tuple[np.ndarray, bool]:
    """Symmetric matrix of the chosen measure; undefined entries are NaN."""
    k = len(vectors)
    values = np.eye(k)
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]

    def one(pair):
        i, j = pair
        try:
            return measure(vectors[i], vectors[j], args).value
        except UndefinedCorrelationError:
            return math.nan

    with ThreadPoolExecutor(max_workers=threads or os.cpu_count() or 1) as pool:
        results = list(pool.map(one, pairs))
    for (i, j), v in zip(pairs, results):
        values[i, j] = values[j, i] = v
    return values, any(math.isnan(v) for v in results)


def cmd_matrix(args) -> int:
    if len(args.files) < 2:
        raise DomainError("matrix needs at least two files")
    vectors = [_read(path, args) for path in args.files]
    check_lengths(*vectors)
    if args.measure == "ap":
        _check_ap_ties(zip(args.files, vectors))
    values, undefined = matrix_values(vectors, args, args.threads)
    labels = list(args.files)
    out = ["\t".join([""] + labels)]
    for label, row in zip(labels, values):
        out.append("\t".join([label] + [format_value(v, args.precision) for v in row]))
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_UNDEFINED if undefined else EXIT_OK


def cmd_bench(args) -> int:
    scheme = get_scheme(args.weight, args.combine)
    print("n\tmedian_seconds\tratio\tvalue")
    for row in experiments.bench(args.n, args.repetitions, args.doublings, args.seed, scheme):
        ratio = "" if row.ratio is None else f"{row.ratio:.3f}"
        print(f"{row.n}\t{row.median_seconds:.6f}\t{ratio}\t{row.value!r}", flush=True)
    return EXIT_OK


def cmd_scatter(args) -> int:
    scheme = get_scheme(args.weight, args.combine)
    if args.mode == "permutations":
        points = experiments.scatter_permutations(args.size, scheme)
    else:
        points = experiments.scatter_skewed(args.levels, scheme)
    p = args.precision
    write = sys.stdout.write
    for tau, weighted in points:
        write(f"{format_value(tau, p)}\t{format_value(weighted, p)}\n")
    return EXIT_OK


def _add_input_flags(p):
    p.add_argument("-c", "--column", type=int, default=None, help="0-based score column")
    p.add_argument("--delimiter", default=None, help="field delimiter (default TAB)")
    p.add_argument("--precision", type=int, default=6, help="decimals printed (default 6)")


def _add_weight_flags(p, default="hyperbolic"):
    p.add_argument(
        "--weight", default=default,
        choices=["hyperbolic", "logarithmic", "quadratic", "constant", "ap"],
    )
    p.add_argument("--combine", default="add", choices=["add", "mul"])


def _add_measure_flags(p):
    p.add_argument("--measure", default="tau", choices=["tau", "gamma", "ap"])
    _add_weight_flags(p)
    p.add_argument(
        "--rank", default="symmetric",
        help="symmetric | first | second | file:<path> (default symmetric)",
    )
    p.add_argument("--top-k", type=int, default=None, dest="top_k",
                   help="send ranks >= k to infinity")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weightedtau", description="Weighted rank correlation between score files."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", help="correlation between two score files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    _add_measure_flags(p)
    _add_input_flags(p)
    p.add_argument("--oracle", action="store_true", help="cross-check by brute force")
    p.add_argument("--breakdown", action="store_true", help="also print T, L, R, J, D")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("matrix", help="TSV matrix of pairwise correlations")
    p.add_argument("files", nargs="+")
    _add_measure_flags(p)
    _add_input_flags(p)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("ap", help="AP correlation of file_a with respect to file_b")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--symmetric", action="store_true", help="average both directions")
    _add_input_flags(p)
    p.set_defaults(func=cmd_ap)

    p = sub.add_parser("bench", help="time the symmetric weighted tau")
    p.add_argument("n", type=int)
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--doublings", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    _add_weight_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("scatter", help="(tau, weighted tau) over enumerated rankings")
    p.add_argument("mode", choices=["permutations", "skewed"])
    p.add_argument("--size", type=int, default=8, help="permutation length")
    p.add_argument("--levels", type=int, default=4, help="distinct scores in skewed mode")
    p.add_argument("--precision", type=int, default=6)
    _add_weight_flags(p)
    p.set_defaults(func=cmd_scatter)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TiesError as exc:
        code = EXIT_TIES
        message = str(exc)
    except LengthMismatchError as exc:
        code, message = EXIT_LENGTH, str(exc)
    except UndefinedCorrelationError as exc:
        code, message = EXIT_UNDEFINED, str(exc)
    except (ParseError, DomainError, OSError, RuntimeError) as exc:
        code, message = EXIT_PARSE, str(exc)
    print(f"weightedtau: error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
