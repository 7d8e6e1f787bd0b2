"""Command-line front end: ``python -m bratteli <verb> ...``.

Exit codes: 0 success, 1 identity violation or failed comparison, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import oracles, samplers
from .branching import BranchingParams, DimensionTable, kappa
from .coeff import format_rational, parse_rational, scalar_to_json
from .errors import BratteliError
from .macdonald import Alphabet, Distribution, measure
from .partitions import CoverStep, Partition, addable_columns, enumerate_partitions
from .report import Report
from .special import jack_kappa, jordan_measure, schur_measure, hl_kappa
from .verify import REGISTRY


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_partition(text: str) -> Partition:
    s = text.strip().strip("[]()").strip()
    if not s:
        return Partition()
    try:
        return Partition(int(v) for v in s.replace(" ", "").split(","))
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--hl-p", type=int)
    g.add_argument("--schur-q", type=_rational)
    g.add_argument("--jack-theta", type=_rational)
    g.add_argument("--symbolic", action="store_true")
    p.add_argument("--q", type=_rational)
    p.add_argument("--t", type=_rational)


def _add_measure_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=_rational)
    p.add_argument("--t", type=_rational)
    p.add_argument("--alphabet")
    p.add_argument("--hl-p", type=int)
    p.add_argument("--schur", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bratteli", description="Macdonald (q,t)-Bratteli diagram toolkit")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="partitions of n in reverse-lex order")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("kappa", help="edge multiplicity")
    p.add_argument("--parent", required=True)
    p.add_argument("--col", type=int, required=True)
    _add_param_flags(p)

    p = sub.add_parser("dim", help="path-sum dimension")
    p.add_argument("--partition", required=True)
    _add_param_flags(p)

    p = sub.add_parser("measure", help="exact coherent measure on level n")
    p.add_argument("--n", type=int, required=True)
    _add_measure_flags(p)

    p = sub.add_parser("sample", help="Monte-Carlo growth")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bk-p", type=int)
    p.add_argument("--paths", action="store_true")
    _add_measure_flags(p)

    p = sub.add_parser("verify", help="check an identity exhaustively")
    p.add_argument("identity", choices=sorted(REGISTRY))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=_rational, action="append")
    _add_measure_flags(p)

    p = sub.add_parser("compare", help="oracle versus exact measure")
    p.add_argument("kind", choices=("matrix-exhaustive", "matrix-mc", "rsk", "asymptotic"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--alphabet")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_rational)
    return parser


# -- parameter resolution -------------------------------------------------------------------


def _branching(args) -> tuple[BranchingParams, Any]:
    """(params, kappa function) for the kappa/dim verbs."""
    if args.symbolic:
        return BranchingParams.formal(), kappa
    if args.hl_p is not None:
        return BranchingParams.hall_littlewood(args.hl_p), lambda step, _: Fraction(hl_kappa(step, args.hl_p))
    if args.schur_q is not None:
        return BranchingParams.numeric(args.schur_q, args.schur_q), kappa
    if args.jack_theta is not None:
        theta = args.jack_theta
        return BranchingParams.numeric(Fraction(1, 2), Fraction(1, 2)), lambda step, _: jack_kappa(step, theta)
    if args.q is None or args.t is None:
        raise UsageError("give --q and --t, or one of --hl-p, --schur-q, --jack-theta, --symbolic")
    return BranchingParams.numeric(args.q, args.t), kappa


def _hl_p(value: int) -> int:
    if value < 2:
        raise UsageError("--hl-p must be at least 2")
    return value


def _measure_params(args) -> tuple[BranchingParams, Alphabet]:
    if args.hl_p is not None:
        p = _hl_p(args.hl_p)
        return BranchingParams.hall_littlewood(p), Alphabet.geometric(p)
    if args.alphabet is None:
        raise UsageError("--alphabet is required unless --hl-p is given")
    alphabet = Alphabet.parse(args.alphabet)
    if args.schur:
        return BranchingParams.numeric(Fraction(1, 2), Fraction(1, 2)), alphabet
    if args.q is None or args.t is None:
        raise UsageError("give --q and --t, --hl-p, or --schur")
    return BranchingParams.numeric(args.q, args.t), alphabet


# -- verbs ------------------------------------------------------------------------------------


def _step(parent: Partition, col: int) -> CoverStep:
    for step in addable_columns(parent):
        if step.col == col:
            return step
    raise UsageError(f"column {col} is not addable to {parent}")


def cmd_enumerate(args):
    return [list(lam) for lam in enumerate_partitions(args.n)], 0


def cmd_kappa(args):
    step = _step(parse_partition(args.parent), args.col)
    params, fn = _branching(args)
    value = fn(step, params)
    return {"parent": list(step.parent), "child": list(step.child), "col": step.col,
            "kappa": scalar_to_json(value), "display": str(value)}, 0


def cmd_dim(args):
    lam = parse_partition(args.partition)
    params, fn = _branching(args)
    value = DimensionTable(params, kappa_fn=fn)(lam)
    return {"partition": list(lam), "dim": scalar_to_json(value), "display": str(value)}, 0


def cmd_measure(args):
    if args.hl_p is not None:
        return jordan_measure(args.n, _hl_p(args.hl_p)), 0
    if args.schur:
        if args.alphabet is None:
            raise UsageError("--schur needs --alphabet")
        return schur_measure(args.n, Alphabet.parse(args.alphabet)), 0
    params, alphabet = _measure_params(args)
    return measure(args.n, alphabet, params), 0


def cmd_sample(args):
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    if args.bk_p is not None:
        run = samplers.sample_bk(args.n, _hl_p(args.bk_p), args.trials, args.seed, paths=args.paths)
    else:
        params, alphabet = _measure_params(args)
        run = samplers.sample_generic(args.n, alphabet, params, args.trials, args.seed, paths=args.paths)
    if args.paths:
        return run.to_json(), 0
    dist = samplers.empirical_distribution(run)
    dist.meta = {"config": {**run.config, "n": run.n, "trials": run.trials}}
    return dist, 0


def cmd_verify(args):
    name, n = args.identity, args.n
    fn = REGISTRY[name]
    if name in ("coherence", "pieri"):
        params, alphabet = _measure_params(args)
        report = fn(n, params, alphabet)
    elif name == "exchangeability":
        report = fn(n, _verify_params(args))
    elif name == "kappa-forms":
        report = fn(n, _verify_params(args))
    elif name == "relative-dim":
        report = fn(n, args.q) if args.q is not None else fn(n)
    elif name == "jack-limit":
        report = fn(n, args.theta) if args.theta else fn(n)
    else:
        report = fn(n)
    return report, 0 if report.ok else 1


def _verify_params(args) -> BranchingParams:
    if args.q is not None and args.t is not None:
        return BranchingParams.numeric(args.q, args.t)
    return BranchingParams.formal()


def cmd_compare(args):
    kind, n = args.kind, args.n
    report = Report(f"compare-{kind}", n, {"trials": args.trials, "seed": args.seed})
    if kind == "matrix-exhaustive" or (kind == "rsk" and args.exhaustive):
        if kind == "matrix-exhaustive":
            got, want = oracles.jordan_distribution_exhaustive(n, args.p), jordan_measure(n, args.p)
            report.params["p"] = args.p
        else:
            alphabet = _alphabet(args)
            got, want = oracles.rsk_distribution_exhaustive(n, alphabet), schur_measure(n, alphabet)
            report.params["alphabet"] = alphabet.describe()
        report.checked_count = len(want.entries)
        if {k: v for k, v in got.entries.items() if v} != {k: v for k, v in want.entries.items() if v}:
            report.fail(oracle=got.to_json()["entries"], exact=want.to_json()["entries"])
        return report, 0 if report.ok else 1
    if args.trials < 1:
        raise UsageError("--trials must be positive for Monte-Carlo comparisons")
    if kind == "asymptotic":
        tol = args.tol if args.tol is not None else Fraction(1, 50)
        profile = samplers.asymptotic_profile(n, args.p, args.trials, args.seed)
        report.params.update({"p": args.p, "tol": format_rational(tol)})
        report.details["profile"] = profile["profile"]
        for row in profile["profile"][:2]:
            report.checked_count += 1
            if abs(row["mean"] - row["limit_approx"]) > tol:
                report.fail(part=row["part"], mean=row["mean"], limit=row["limit"])
                break
        return report, 0 if report.ok else 1
    tol = args.tol if args.tol is not None else Fraction(1, 100)
    if kind == "matrix-mc":
        got = oracles.jordan_distribution_mc(n, args.p, args.trials, args.seed)
        want = jordan_measure(n, args.p)
        report.params["p"] = args.p
    else:
        alphabet = _alphabet(args)
        got = oracles.rsk_distribution(n, alphabet, args.trials, args.seed)
        want = schur_measure(n, alphabet)
        report.params["alphabet"] = alphabet.describe()
    tv = samplers.tv_distance(got, want)
    report.checked_count = 1
    report.params["tol"] = format_rational(tol)
    report.details.update({"tv": format_rational(tv), "tv_approx": float(tv)})
    if tv >= tol:
        report.fail(tv=format_rational(tv))
    return report, 0 if report.ok else 1


def _alphabet(args) -> Alphabet:
    if args.alphabet is None:
        raise UsageError("--alphabet is required")
    alphabet = Alphabet.parse(args.alphabet)
    if alphabet.kind != "finite":
        raise UsageError("RSK needs a finite alphabet")
    return alphabet


COMMANDS = {
    "enumerate": cmd_enumerate,
    "kappa": cmd_kappa,
    "dim": cmd_dim,
    "measure": cmd_measure,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "compare": cmd_compare,
}


# -- output -----------------------------------------------------------------------------------


def _to_json(result) -> Any:
    if isinstance(result, (Distribution, Report)):
        return result.to_json()
    return result


def _to_csv(result) -> str:
    if isinstance(result, Distribution):
        return result.to_csv()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    data = _to_json(result)
    if isinstance(data, list):
        writer.writerow(["partition"])
        for row in data:
            writer.writerow([" ".join(map(str, row))])
    else:
        writer.writerow(["key", "value"])
        for key, value in data.items():
            writer.writerow([key, value if isinstance(value, (str, int)) else json.dumps(value)])
    return buf.getvalue()


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        result, code = COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (BratteliError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _to_csv(result) if args.format == "csv" else json.dumps(_to_json(result)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
