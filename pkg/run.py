# Version: 0.1.0
from datetime import datetime
import os
import subprocess
import logging
import sys

PROBLEM = 'problems/c111c.json'

os.makedirs('logs', exist_ok=True)
filename = f'logs/benchmark_pipeline.log'

logging.basicConfig(level=logging.DEBUG, format='%(asctime)s - %(levelname)s - %(message)s', filename=filename)


def run_stage(name, *args):
    logging.info(f'Start {name}')
    result = subprocess.run([sys.executable, '-m', 'ahg_hgm', *args])
    if result.returncode != 0:
        logging.error(f'{name} failed with exit code {result.returncode}')
    logging.info(f'End {name}')
    return result.returncode


def run_benchmark_pipeline():
    logging.info(f'Start benchmark pipeline at {datetime.now()}')

    os.makedirs('results', exist_ok=True)
    run_stage('toric Groebner basis', 'toric', PROBLEM, '--output', 'results/toric.txt')
    run_stage('path finding', 'path', PROBLEM, '--output', 'results/path.txt')
    run_stage('recurrence extraction', 'recurrence', PROBLEM, '--output', 'results/recurrence_leg1.json')
    run_stage('recurrence extraction', 'recurrence', PROBLEM, '--leg', '2', '--output', 'results/recurrence_leg2.json')
    run_stage('HGM evaluation', 'eval', PROBLEM, '--output', 'results/eval.tsv')
    run_stage('benchmark', 'bench', PROBLEM, '--k', '0,10,20', '--output', 'results/bench.csv')

    logging.info(f'End benchmark pipeline at {datetime.now()}')


if __name__ == '__main__':
    run_benchmark_pipeline()
