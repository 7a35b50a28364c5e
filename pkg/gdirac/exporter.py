import json
import logging
import math
import os
import sys
import tempfile

import numpy as np
from tablib import Dataset

from .constants import CSV_FLOAT_FORMAT


logger = logging.getLogger(__name__)

STDOUT = '-'


def format_float(value) -> str:
    value = float(value)
    if math.isnan(value):
        return 'nan'
    return format(value, CSV_FLOAT_FORMAT)


def _json_default(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=_json_default) + '\n'


def write_text(text: str, path) -> None:
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    if path is None or path == STDOUT:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    handle = tempfile.NamedTemporaryFile('w', encoding='utf-8', dir=directory, delete=False,
                                         prefix='.gdirac-', suffix='.tmp', newline='')
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        if os.path.exists(handle.name):
            os.unlink(handle.name)
        raise
    logger.info(f"wrote {path}")


def write_json(data, path) -> None:
    write_text(dumps(data), path)


class Exporter:

    def __init__(self, path=None):
        self.path = path

    def get_secular_dataset(self, evaluations) -> Dataset:
        """One row per sample z; rows at poles are kept with NaN values and pole_flag set."""
        dataset = Dataset(headers=['z_re', 'z_im', 's_re', 's_im', 's_abs', 'pole_flag'])
        for z, value, pole in evaluations:
            z = complex(z)
            row = [format_float(z.real), format_float(z.imag)]
            if pole:
                dataset.append(row + ['nan', 'nan', 'nan', 1])
            else:
                dataset.append(row + [format_float(value.real), format_float(value.imag), format_float(abs(value)), 0])
        return dataset

    def get_eigenvalue_dataset(self, values) -> Dataset:
        dataset = Dataset(headers=['index', 'lambda'])
        for index, value in enumerate(values):
            dataset.append([index, format_float(value)])
        return dataset

    def get_minima_dataset(self, minima) -> Dataset:
        dataset = Dataset(headers=['z', 'abs_secular'])
        for z, value in minima:
            dataset.append([format_float(z), format_float(value)])
        return dataset

    def write(self, dataset: Dataset) -> None:
        write_text(dataset.export('csv', lineterminator='\n'), self.path)


def matrix_document(matrix) -> list:
    """Row-major [re, im] pairs."""
    return [[[float(value.real), float(value.imag)] for value in row] for row in np.asarray(matrix, dtype=complex)]


def conditions_document(cm, report=None) -> dict:
    data = {
        'A': matrix_document(cm.A),
        'B': matrix_document(cm.B),
    }
    if cm.vertex_rows:
        data['vertex_rows'] = {vertex: list(rows) for vertex, rows in cm.vertex_rows.items()}
    if report is not None:
        data['report'] = report._asdict()
    return data


def eigenvector_document(system) -> dict:
    """Eigenvectors of the discrete operator keyed by the labels of its unknowns."""
    op = system.operator
    psi = system.vectors / np.sqrt(op.weights)[:, None]
    return {
        'eigenvalues': [float(value) for value in system.values],
        'vectors': [
            {dof.label: [float(psi[row, i].real), float(psi[row, i].imag)] for row, dof in enumerate(op.dofs)}
            for i in range(len(system.values))
        ],
    }
