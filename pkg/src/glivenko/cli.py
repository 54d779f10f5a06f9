"""``glivenko`` command-line interface.

Every randomized command takes an explicit ``--seed``; output goes to stdout
or ``--output`` as CSV (default) or JSON.  Exit status is 0 on success, 2 on a
usage or precondition error and 1 when a computation fails at run time
(e.g. a certificate grid that is too short).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import convergence, coverage
from .distributions import draw_values, parse_model
from .ecdf import Sample, build_ecdf, ecdf_eval, format_sample, read_sample_file, sup_distance
from .errors import DomainError, GridInsufficientError
from .output import encode
from .rng import MASK64, SeedSpec


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer, got {value}")
    return value


def _seed_spec(args) -> SeedSpec:
    if args.seed is None:
        raise DomainError(f"{args.command} draws random samples and requires --seed")
    return SeedSpec(args.seed, args.stream)


def _load_sample(args) -> Sample:
    if args.sample_file is not None:
        try:
            return read_sample_file(args.sample_file)
        except OSError as exc:
            raise DomainError(f"cannot read sample file: {exc}") from None
    if args.n is None:
        raise DomainError(f"{args.command} needs --sample-file or --n with --seed")
    return Sample(draw_values(parse_model(args.model), _positive(args.n, "--n"), _seed_spec(args)))


def _positive(value: int, flag: str) -> int:
    if value is None or value < 1:
        raise DomainError(f"{flag} must be >= 1, got {value}")
    return value


def _table(header, rows, args) -> str:
    return encode(header, rows, args.format)


def cmd_sample(args) -> str:
    values = draw_values(parse_model(args.model), _positive(args.n, "--n"), _seed_spec(args))
    if args.format == "csv":
        return format_sample(values)
    return _table(["value"], [[v] for v in values], args)


def cmd_ecdf_eval(args) -> str:
    ecdf = build_ecdf(read_sample_file(args.sample_file))
    return _table(["x", "ecdf"], [[x, ecdf_eval(ecdf, x)] for x in args.x], args)


def cmd_ks(args) -> str:
    model = parse_model(args.model)
    sample = _load_sample(args)
    res = sup_distance(build_ecdf(sample), model)
    return _table(
        ["n", "distance", "witness_x", "side"], [[sample.n, res.distance, res.witness_x, res.side.value]], args
    )


def cmd_trajectory(args) -> str:
    traj = convergence.run_trajectory(parse_model(args.model), args.checkpoints, args.probes, _seed_spec(args))
    return _table(*traj.table(), args)


def cmd_escape(args) -> str:
    reports = convergence.escape_table(
        parse_model(args.model), args.eps, args.n, _positive(args.trials, "--trials"), _seed_spec(args), args.threads
    )
    return _table(convergence.EscapeReport.HEADER, [r.row() for r in reports], args)


def cmd_certificate(args) -> str:
    sched = convergence.certificate_schedule(
        parse_model(args.model),
        args.eps_tilde,
        args.m_max,
        _positive(args.trials, "--trials"),
        args.grid,
        _seed_spec(args),
        args.threads,
    )
    return _table(*sched.table(), args)


def cmd_pointwise(args) -> str:
    model = parse_model(args.model)
    seed = _seed_spec(args)
    rows = []
    for x in args.x:
        mom = convergence.pointwise_moments(model, x, args.n, args.trials, seed, args.threads)
        f = model.cdf(x)
        rows.append([x, args.n, args.trials, mom.mean_est, mom.var_est, f, f * (1.0 - f) / args.n])
    return _table(["x", "n", "trials", "mean_est", "var_est", "cdf", "target_var"], rows, args)


def cmd_coverage(args) -> str:
    model = parse_model(args.model)
    rows = []
    for n in args.n:
        if args.trials is None:
            rep = coverage.CoverageReport(args.x0, n, coverage.analytic_miss(model, args.x0, n))
        else:
            rep = coverage.estimate_miss(model, args.x0, n, args.trials, _seed_spec(args), args.threads)
        rows.append(rep.row())
    return _table(coverage.CoverageReport.HEADER, rows, args)


def cmd_partition(args) -> str:
    model = parse_model(args.model)
    report = coverage.partition_report(model, _load_sample(args), coverage.Partition(tuple(args.breakpoints)))
    return _table(*report.table(), args)


def cmd_tails(args) -> str:
    table = coverage.tail_speed_compare(parse_model(args.model_a), parse_model(args.model_b), args.x0, args.n)
    return _table(["n", "miss_a", "miss_b"], [list(r) for r in table], args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glivenko",
        description="Empirical distribution functions, sup distances and convergence diagnostics.",
        epilog="Model grammar: uniform:a,b | exp:rate | pareto:xm,alpha | bern:p | disc:v1:m1,v2:m2,...",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads for trials")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=_seed, help="64-bit master seed (required for random draws)")
    seeded.add_argument("--stream", type=int, default=0, help="stream index under the master seed")

    def add(name: str, func: Callable, help: str, *parents) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common, *parents])
        p.set_defaults(func=func)
        return p

    p = add("sample", cmd_sample, "draw a seeded sample (one value per line)", seeded)
    p.add_argument("--model", required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("ecdf-eval", cmd_ecdf_eval, "evaluate the ECDF of a sample file")
    p.add_argument("--sample-file", required=True)
    p.add_argument("--x", type=_float_list, required=True, help="comma-separated query points")

    p = add("ks", cmd_ks, "exact sup distance between a sample's ECDF and a model", seeded)
    p.add_argument("--model", required=True)
    p.add_argument("--sample-file")
    p.add_argument("--n", type=int, help="draw a sample of this size instead of reading a file")

    p = add("trajectory", cmd_trajectory, "sup distance along one growing sample", seeded)
    p.add_argument("--model", required=True)
    p.add_argument("--checkpoints", type=_int_list, required=True)
    p.add_argument("--probes", type=_float_list, default=[])

    p = add("escape", cmd_escape, "escape fraction P(sup >= eps) over trials", seeded)
    p.add_argument("--model", required=True)
    p.add_argument("--eps", type=_float_list, required=True)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--trials", type=int, required=True)

    p = add("certificate", cmd_certificate, "sample sizes meeting eps_tilde/2^m escape budgets", seeded)
    p.add_argument("--model", required=True)
    p.add_argument("--eps-tilde", type=float, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--grid", type=_int_list, required=True)

    p = add("pointwise", cmd_pointwise, "mean and variance of F_n(x) over trials", seeded)
    p.add_argument("--model", required=True)
    p.add_argument("--x", type=_float_list, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)

    p = add("coverage", cmd_coverage, "probability that x0 is missed by the sample", seeded)
    p.add_argument("--model", required=True)
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--trials", type=int, help="add a Monte Carlo estimate (needs --seed)")

    p = add("partition", cmd_partition, "cell counts against model cell probabilities", seeded)
    p.add_argument("--model", required=True)
    p.add_argument("--breakpoints", type=_float_list, required=True)
    p.add_argument("--sample-file")
    p.add_argument("--n", type=int)

    p = add("tails", cmd_tails, "range-miss table for two continuous models")
    p.add_argument("--model-a", required=True)
    p.add_argument("--model-b", required=True)
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--n", type=_int_list, required=True)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.threads < 1:
            raise DomainError(f"--threads must be >= 1, got {args.threads}")
        text = args.func(args)
    except (DomainError, OSError) as exc:
        print(f"glivenko {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except GridInsufficientError as exc:
        print(f"glivenko {args.command}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        Path(args.output).write_bytes(text.encode("ascii"))
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
