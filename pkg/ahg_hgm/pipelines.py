"""
This module defines the writers for the results of the ahg_hgm project. It contains:

BenchRecordPipeline: Collects BenchRecord items and writes them as CSV with pandas.
macaulay_frame / write_table: Lay a Macaulay matrix out as a labelled table (TSV).
write_json: Writes a JSON document (recurrence matrices, state vectors) to a file or stdout.
"""
import json
import logging
import os
import sys

import pandas as pd

from ahg_hgm.exceptions import MethodMismatch
from ahg_hgm.macaulay import monomial_label

BENCH_COLUMNS = ['method', 'k', 'wall_seconds', 'value', 'fiber_count']


class BenchRecordPipeline(object):
    """
    Collects benchmark records and writes them as CSV when closed.

    Attributes:
        path (str): Destination file, or None for stdout.
        records (list): Records processed so far.
    """

    def __init__(self, path=None):
        """
        Args:
            path (str): Destination CSV file; None or "-" writes to stdout.
        """
        self.path = None if path in (None, '-') else path
        self.records = []
        self.logger = logging.getLogger(__name__)

    def open(self):
        if self.path:
            directory = os.path.dirname(self.path)
            if directory:
                os.makedirs(directory, exist_ok=True)
        self.records = []
        return self

    def process_item(self, record):
        """
        Adds one record. Two different values for the same k are refused.

        Returns:
            BenchRecord: The record.
        """
        for other in self.records:
            if other.k == record.k and other.value != record.value:
                self.logger.error(f'Conflicting values for k = {record.k}: {other.value} ({other.method}) and {record.value} ({record.method})')
                raise MethodMismatch(f'conflicting values for k = {record.k}: {other.value} and {record.value}')
        self.records.append(record)
        return record

    def frame(self):
        frame = pd.DataFrame([record.to_dict() for record in self.records], columns=BENCH_COLUMNS)
        frame['k'] = frame['k'].astype('int64')
        frame['fiber_count'] = frame['fiber_count'].astype('Int64')
        return frame

    def close(self):
        frame = self.frame()
        if self.path:
            frame.to_csv(self.path, index=False, float_format='%.3f')
            self.logger.info(f'{len(frame)} benchmark records written to {self.path}')
        else:
            frame.to_csv(sys.stdout, index=False, float_format='%.3f')
        return frame

    def __enter__(self):
        return self.open()

    def __exit__(self, exc_type, exc, traceback):
        if exc_type is None:
            self.close()
        return False


def macaulay_frame(Fp, specialized=None):
    """
    A DataFrame with one column per monomial label (M' then S) and string entries.

    Args:
        Fp (MacaulayMatrix): The symbolic matrix.
        specialized (FieldMatrix): Its specialization; when given its entries are shown instead.
    """
    columns = Fp.all_columns
    rows = specialized.rows if specialized is not None else Fp.rows
    table = [[str(row[e]) if e in row else '0' for e in columns] for row in rows]
    return pd.DataFrame(table, columns=[monomial_label(e) for e in columns])


def write_table(frame, path=None):
    """Writes a frame as TSV with a header row of column labels."""
    if path in (None, '-'):
        frame.to_csv(sys.stdout, sep='\t', index=False)
    else:
        frame.to_csv(path, sep='\t', index=False)


def write_json(document, path=None):
    """Writes a JSON document to ``path`` or stdout."""
    text = json.dumps(document, indent=2)
    if path in (None, '-'):
        print(text)
    else:
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text + '\n')
        logging.getLogger(__name__).info(f'JSON document written to {path}')
