"""
Benchmark harness: the Macaulay-matrix HGM against exhaustive fiber enumeration.

For each k the legs of the problem take per_k * k steps; both methods evaluate Z at the same
endpoint and must agree exactly.
"""
from fractions import Fraction
import datetime
import logging
import time

import humanize

from ahg_hgm.exact import format_rational
from ahg_hgm.exceptions import MethodMismatch
from ahg_hgm.fibers import enumerate_fiber
from ahg_hgm.hgm import EvalPlan, hgm_eval, oracle_vector
from ahg_hgm.items import BenchRecord
from ahg_hgm.polynomials import toric_gb

logger = logging.getLogger(__name__)


def _elapsed(seconds):
    return humanize.precisedelta(datetime.timedelta(seconds=seconds), minimum_unit='milliseconds')


def run_benchmark(problem, ks, threads=None, T=None, pipeline=None):
    """
    Times both evaluation methods for every k.

    Args:
        problem (ProblemFile): The benchmark problem.
        ks (list): Values of k.
        threads (int): Passed to fiber enumeration and Macaulay construction.
        T (int): Initial Macaulay degree override.
        pipeline (BenchRecordPipeline): Receives each record as soon as it is measured.

    Returns:
        list: BenchRecord objects, hgm then enumerate for each k.

    Raises:
        MethodMismatch: If the two values differ at some k.
    """
    G = toric_gb(problem.A, problem.order)
    zero = (0,) * problem.A.n
    records = []
    for k in ks:
        plan = EvalPlan.from_problem(problem.with_k(k))

        start = time.perf_counter()
        state = hgm_eval(plan, G=G, T=T, threads=threads)
        hgm_seconds = time.perf_counter() - start

        start = time.perf_counter()
        fiber = enumerate_fiber(problem.A, plan.endpoint, threads=threads)
        z = oracle_vector(problem.A, [zero], plan.endpoint, plan.X, fiber).z
        enumerate_seconds = time.perf_counter() - start

        hgm_value = format_rational(state.z)
        enumerate_value = format_rational(Fraction(z))
        if hgm_value != enumerate_value:
            raise MethodMismatch(f'k = {k}: hgm gave {hgm_value}, enumeration gave {enumerate_value}')

        batch = [
            BenchRecord('hgm', k, hgm_seconds, hgm_value),
            BenchRecord('enumerate', k, enumerate_seconds, enumerate_value, len(fiber)),
        ]
        for record in batch:
            records.append(record)
            if pipeline is not None:
                pipeline.process_item(record)
        logger.info(f'k = {k}: hgm {_elapsed(hgm_seconds)}, enumeration of {len(fiber)} points {_elapsed(enumerate_seconds)}')
    return records
