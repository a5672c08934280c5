"""
Command-line surface of ahg_hgm.

    python -m ahg_hgm <toric|macaulay|recurrence|eval|enumerate|path|bench> PROBLEM [options]

Values go to stdout, logs to settings.LOG_FILE. Exit codes: 0 ok, 2 parse/validation,
3 method mismatch, 4 semigroup membership failure, 5 singular/genericity failure.
"""
from dataclasses import replace
import argparse
import logging
import os
import sys

from ahg_hgm import settings
from ahg_hgm.bench import run_benchmark
from ahg_hgm.exact import format_rational, to_decimal_string
from ahg_hgm.exceptions import AhgError, MethodMismatch
from ahg_hgm.fibers import enumerate_fiber
from ahg_hgm.hgm import EvalPlan, expectation, hgm_eval, oracle_vector, shift_nonnegative, verify_against_oracle
from ahg_hgm.items import Leg, ProblemFile
from ahg_hgm.macaulay import build_macaulay, monomial_label, specialize
from ahg_hgm.pipelines import BenchRecordPipeline, macaulay_frame, write_json, write_table
from ahg_hgm.polynomials import toric_gb
from ahg_hgm.recurrence import extract_recurrence, find_path

logger = logging.getLogger(__name__)


def configure_logging(level=None):
    os.makedirs(settings.LOG_DIR, exist_ok=True)
    logging.basicConfig(level=(level or settings.LOG_LEVEL).upper(), format=settings.LOG_FORMAT,
                        filename=settings.LOG_FILE)


def _parse_ks(text):
    try:
        ks = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a comma separated list of integers, got {text!r}')
    if not ks or any(k < 0 for k in ks):
        raise argparse.ArgumentTypeError('k values must be nonnegative integers')
    return ks


def build_parser():
    parser = argparse.ArgumentParser(prog='ahg_hgm', description='Exact evaluation of A-hypergeometric polynomials.')
    parser.add_argument('--log-level', default=None, help='Logging level (default: AHG_LOG_LEVEL).')
    subparsers = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('problem', help='Path of a JSON problem file.')
    common.add_argument('--order', choices=['lex', 'grevlex'], default=None, help='Term order (overrides the file).')
    common.add_argument('--T', type=int, default=None, help='Initial Macaulay degree.')
    common.add_argument('--threads', type=int, default=None, help='Worker threads for fiber and row construction.')
    common.add_argument('--decimal-digits', type=int, default=None, help='Significant digits of decimal output.')
    common.add_argument('--output', default=None, help='Write to a file instead of stdout.')

    subparsers.add_parser('toric', parents=[common], help='Print the toric Groebner basis.')
    macaulay = subparsers.add_parser('macaulay', parents=[common], help='Print the Macaulay type matrix as TSV.')
    macaulay.add_argument('--specialize', action='store_true', help='Substitute x = X and c = beta + k H.')
    macaulay.add_argument('--leg', type=int, default=1, help='Leg whose direction is used (1-based).')
    recurrence = subparsers.add_parser('recurrence', parents=[common], help='Print the recurrence matrix as JSON.')
    recurrence.add_argument('--leg', type=int, default=1, help='Leg to extract (1-based).')
    evaluate = subparsers.add_parser('eval', parents=[common], help='Run the HGM along the legs.')
    evaluate.add_argument('--verify-oracle', action='store_true', help='Compare the endpoint with fiber enumeration.')
    subparsers.add_parser('enumerate', parents=[common], help='Enumerate the fiber at the plan endpoint.')
    subparsers.add_parser('path', parents=[common], help='Find a path of beta towards the origin.')
    bench = subparsers.add_parser('bench', parents=[common], help='Benchmark HGM against enumeration, CSV output.')
    bench.add_argument('--k', type=_parse_ks, default=[0, 10, 20], help='Comma separated k values.')
    return parser


def load_problem(args):
    """
    Loads the problem, applies --order and shifts matrices with negative entries.

    A problem with an ``hform`` is rewritten over A' = (a_i + p): beta and every H are mapped by
    the shift, the fibers and hence every value are unchanged.
    """
    problem = ProblemFile.load(args.problem)
    if args.order:
        problem = replace(problem, order=args.order)
    if problem.hform is not None and not problem.A.is_nonnegative():
        shift = shift_nonnegative(problem.A, problem.hform)
        legs = [Leg(shift.transform(leg.H), leg.steps, leg.per_k) for leg in problem.legs]
        problem = replace(problem, A=shift.config, beta=shift.transform(problem.beta), legs=legs)
    return problem


class Output(object):
    """Collects lines and writes them to a file or stdout."""

    def __init__(self, path=None):
        self.path = None if path in (None, '-') else path
        self.lines = []

    def add(self, *fields):
        self.lines.append('\t'.join(str(f) for f in fields))

    def flush(self):
        text = '\n'.join(self.lines)
        if self.path:
            with open(self.path, 'w', encoding='utf-8') as handle:
                handle.write(text + '\n')
        else:
            print(text)


def _leg_base(problem, index):
    """(base beta, leg) for the 1-based leg index."""
    if not problem.legs:
        raise AhgError('the problem has no legs')
    if not 1 <= index <= len(problem.legs):
        raise AhgError(f'leg {index} out of range 1..{len(problem.legs)}')
    beta = list(problem.beta)
    for leg in problem.legs[:index - 1]:
        beta = [b + leg.steps * h for b, h in zip(beta, leg.H)]
    return tuple(beta), problem.legs[index - 1]


def _value_line(output, label, value, digits):
    output.add(label, format_rational(value), to_decimal_string(value, digits))


def cmd_toric(problem, args):
    G = toric_gb(problem.A, problem.order)
    output = Output(args.output)
    if len(G) == 0:
        output.add('(empty ideal)')
    for line in G.to_strings():
        output.add(line)
    output.flush()


def cmd_macaulay(problem, args):
    G = toric_gb(problem.A, problem.order)
    T = 1 if args.T is None else args.T
    Fp = build_macaulay(problem.A, G, problem.S, T, threads=args.threads)
    specialized = None
    if args.specialize:
        beta, leg = _leg_base(problem, args.leg)
        specialized = specialize(Fp, problem.X, beta, leg.H)
    write_table(macaulay_frame(Fp, specialized), args.output)


def cmd_recurrence(problem, args):
    G = toric_gb(problem.A, problem.order)
    beta, leg = _leg_base(problem, args.leg)
    R = extract_recurrence(problem.A, problem.S, beta, problem.X, leg.H, G=G, weights=problem.weights,
                           T=args.T, threads=args.threads)
    write_json(R.to_json(), args.output)


def cmd_eval(problem, args):
    G = toric_gb(problem.A, problem.order)
    state = hgm_eval(EvalPlan.from_problem(problem), G=G, T=args.T, threads=args.threads)
    digits = args.decimal_digits
    output = Output(args.output)
    for s, value in zip(state.basis, state.values):
        _value_line(output, monomial_label(s), value, digits)
    for i in range(problem.A.n):
        e = tuple(1 if j == i else 0 for j in range(problem.A.n))
        if e in state.basis:
            _value_line(output, f'E[U_{i + 1}]', expectation(state, problem.A, i, G=G), digits)
    if args.verify_oracle:
        if not verify_against_oracle(state, problem.A):
            raise MethodMismatch(f'HGM and fiber enumeration differ at beta = {state.beta}')
        output.add('VERIFIED')
    output.flush()


def cmd_enumerate(problem, args):
    beta = problem.endpoint
    fiber = enumerate_fiber(problem.A, beta, threads=args.threads)
    state = oracle_vector(problem.A, problem.S, beta, problem.X, fiber)
    output = Output(args.output)
    output.add('fiber_count', len(fiber))
    for s, value in zip(state.basis, state.values):
        _value_line(output, monomial_label(s), value, args.decimal_digits)
    output.flush()


def cmd_path(problem, args):
    G = toric_gb(problem.A, problem.order)
    output = Output(args.output)
    output.add(str(find_path(problem.A, problem.beta, problem.S, G)))
    output.flush()


def cmd_bench(problem, args):
    with BenchRecordPipeline(args.output) as pipeline:
        run_benchmark(problem, args.k, threads=args.threads, T=args.T, pipeline=pipeline)


COMMANDS = {
    'toric': cmd_toric,
    'macaulay': cmd_macaulay,
    'recurrence': cmd_recurrence,
    'eval': cmd_eval,
    'enumerate': cmd_enumerate,
    'path': cmd_path,
    'bench': cmd_bench,
}


def main(argv=None):
    """Runs one subcommand and returns the process exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    logger.info(f'Start {args.command} on {args.problem}')
    try:
        problem = load_problem(args)
        COMMANDS[args.command](problem, args)
    except AhgError as error:
        logger.error(f'{args.command} failed: {error}')
        print(f'error: {error}', file=sys.stderr)
        return error.exit_code
    except Exception as error:
        logger.error(f'{args.command} failed unexpectedly: {error}', exc_info=True)
        print(f'error: {error}', file=sys.stderr)
        return 1
    logger.info(f'End {args.command} on {args.problem}')
    return 0
