"""
Command-line interface.

Exit codes: 0 on success, 1 on invalid input or an infeasible or
unschedulable result, 2 on a usage error and 3 on an I/O error.

"""

import argparse
import logging
import sys
from dataclasses import asdict
from typing import List, Optional

import pandas as pd
import yaml

from skmalleable import __version__
from skmalleable.harness.config import SweepConfig
from skmalleable.harness.generation import GenSpec, speedup_vector, uunifast_discard_max
from skmalleable.harness.sweep import check_umax_trend, emit, run_sweep
from skmalleable.model import read_tasks, write_tasks
from skmalleable.optimizer import TABLE_MODES, minimum_optimal_frequency, optimize, optimize_discrete
from skmalleable.power import read_power_matrix
from skmalleable.schedule import build_canonical, simulate, write_trace


EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_IO = 3


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line and return the exit code.

    Examples
    --------
    >>> from skmalleable.harness.cli import main

    >>> main(['minfreq'])
    2

    """
    parser = _build_parser()

    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return EXIT_OK if not error.code else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )

    try:
        return args.command(args)
    except (ValueError, RuntimeError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_IO


def _validate(args: argparse.Namespace) -> int:

    tau = read_tasks(args.tasks)

    print(f"valid: {len(tau)} tasks, {tau.n_cores} processors, total utilization {tau.total_utilization:.12g}")

    return EXIT_OK


def _minfreq(args: argparse.Namespace) -> int:

    tau = read_tasks(args.tasks)

    print(f"{minimum_optimal_frequency(tau, args.cores):.12g}")

    return EXIT_OK


def _optimize(args: argparse.Namespace) -> int:

    tau = read_tasks(args.tasks)
    power, _ = read_power_matrix(args.power)

    solve = optimize if args.mode == 'exact' else optimize_discrete

    plan, table = solve(tau, power, m_max=args.cores_max)

    print(pd.DataFrame([asdict(row) for row in table]).to_string(index=False))
    print(f"chosen: {plan.active_cores} active cores at {plan.f_quantized:.12g}, {plan.power_watts:.12g} W")

    return EXIT_OK


def _schedule(args: argparse.Namespace) -> int:

    tau = read_tasks(args.tasks)

    assignment = build_canonical(tau, args.cores, args.freq, slot=args.quantum)
    trace, verdict = simulate(assignment, tau, horizon=args.horizon)

    write_trace(trace, args.out)
    print(yaml.safe_dump(verdict.summary(), sort_keys=False), end='')

    return EXIT_OK if verdict.is_schedulable else EXIT_INVALID


def _gen(args: argparse.Namespace) -> int:

    if args.ucap is None:

        f_top = 1.0

        if args.power is not None:
            power, _ = read_power_matrix(args.power)
            f_top = float(power.normalized_frequencies[-1])

        u_cap = float(speedup_vector(args.speedup, args.cores)[-1]) * f_top

    else:
        u_cap = args.ucap

    spec = GenSpec(
        n=args.n,
        U_target=args.util,
        U_max=args.umax,
        u_cap=u_cap,
        seed=args.seed,
        period_range=tuple(args.periods),
        speedup_source=args.speedup,
        n_cores=args.cores,
    )

    write_tasks(uunifast_discard_max(spec), args.out)

    return EXIT_OK


def _experiment(args: argparse.Namespace) -> int:

    config = SweepConfig.read(args.config)

    if args.workers is not None:
        config = SweepConfig.from_dict({**config.to_dict(), 'workers': args.workers}, base_dir=config.base_dir)

    result = run_sweep(config)
    path_data, path_manifest = emit(result, args.out_dir)

    check_umax_trend(result)
    print(f"wrote {path_data} and {path_manifest}")

    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(prog='skmalleable', description="Malleable gang scheduling with frequency scaling.")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('-v', '--verbose', action='store_true', help="log debug messages")

    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    validate = subparsers.add_parser('validate', help="validate a task file")
    validate.add_argument('--tasks', required=True)
    validate.set_defaults(command=_validate)

    minfreq = subparsers.add_parser('minfreq', help="print the minimum normalized frequency on m processors")
    minfreq.add_argument('--tasks', required=True)
    minfreq.add_argument('--cores', type=int, required=True)
    minfreq.set_defaults(command=_minfreq)

    optimize_parser = subparsers.add_parser('optimize', help="choose the active cores and frequency of least power")
    optimize_parser.add_argument('--tasks', required=True)
    optimize_parser.add_argument('--power', required=True)
    optimize_parser.add_argument('--cores-max', type=int)
    optimize_parser.add_argument('--mode', choices=TABLE_MODES, default='exact')
    optimize_parser.set_defaults(command=_optimize)

    schedule = subparsers.add_parser('schedule', help="build and simulate the canonical schedule")
    schedule.add_argument('--tasks', required=True)
    schedule.add_argument('--cores', type=int, required=True)
    schedule.add_argument('--freq', type=float, required=True)
    schedule.add_argument('--quantum', type=float)
    schedule.add_argument('--horizon', type=float)
    schedule.add_argument('--out', required=True)
    schedule.set_defaults(command=_schedule)

    gen = subparsers.add_parser('gen', help="generate a random task file")
    gen.add_argument('--n', type=int, required=True)
    gen.add_argument('--util', type=float, required=True)
    gen.add_argument('--umax', type=float, required=True)
    gen.add_argument('--ucap', type=float)
    gen.add_argument('--seed', type=int, required=True)
    gen.add_argument('--speedup', required=True)
    gen.add_argument('--cores', type=int, default=8)
    gen.add_argument('--periods', type=int, nargs=2, default=[10, 100], metavar=('LOW', 'HIGH'))
    gen.add_argument('--power')
    gen.add_argument('--out', required=True)
    gen.set_defaults(command=_gen)

    experiment = subparsers.add_parser('experiment', help="run a power-savings sweep")
    experiment.add_argument('--config', required=True)
    experiment.add_argument('--out-dir', required=True)
    experiment.add_argument('--workers', type=int)
    experiment.set_defaults(command=_experiment)

    return parser
