"""Matrix files: Matrix Market array format (canonical), CSV and JSON.

Every real is written with 17 significant digits, so reading a written
file gives back the same doubles bit for bit.
"""
import json
import os

import numpy as np
import scipy.io

from formstab.errors import MatrixFileError
from formstab.matcore import as_real_matrix

FORMATS = ('mm', 'csv', 'json')
EXTENSIONS = {'mm': 'mtx', 'csv': 'csv', 'json': 'json'}
MM_HEADER = '%%MatrixMarket matrix array real general'


def _fmt(x):
    return '%.17g' % x


def matrix_to_record(M):
    M = as_real_matrix(M)
    return {'rows': M.shape[0], 'cols': M.shape[1], 'data': M.tolist()}


def format_matrix(M, fmt='mm'):
    M = as_real_matrix(M)
    rows, cols = M.shape
    if fmt == 'mm':
        lines = [MM_HEADER, f'{rows} {cols}']
        lines.extend(_fmt(x) for x in M.ravel(order='F'))
        return '\n'.join(lines) + '\n'
    if fmt == 'csv':
        return ''.join(','.join(_fmt(x) for x in row) + '\n' for row in M)
    if fmt == 'json':
        return json.dumps(matrix_to_record(M)) + '\n'
    raise ValueError(f"Unknown matrix format '{fmt}'. Known: {', '.join(FORMATS)}")


def write_matrix(path, M, fmt=None):
    fmt = fmt or format_from_path(path)
    with open(path, 'w') as f:
        f.write(format_matrix(M, fmt))


def format_from_path(path):
    ext = os.path.splitext(path)[1].lower()
    if ext in ('.mtx', '.mm'):
        return 'mm'
    if ext == '.csv':
        return 'csv'
    if ext == '.json':
        return 'json'
    raise MatrixFileError(f"Cannot infer matrix format from '{path}' (use .mtx, .mm, .csv or .json)")


def _read_json(path):
    with open(path, 'r') as f:
        data = json.load(f)
    if isinstance(data, dict):
        if 'data' not in data:
            raise MatrixFileError(f"{path}: JSON object has no 'data' field")
        matrix = np.array(data['data'], dtype=np.float64)
        expected = (data.get('rows', matrix.shape[0]), data.get('cols', matrix.shape[-1]))
        if matrix.ndim != 2 or matrix.shape != tuple(expected):
            raise MatrixFileError(f"{path}: data shape {matrix.shape} does not match rows/cols {expected}")
        return matrix
    return np.array(data, dtype=np.float64)


def read_matrix(path, fmt=None):
    """Read a dense real matrix; the format is inferred from the extension when fmt is None."""
    fmt = fmt or format_from_path(path)
    if not os.path.isfile(path):
        raise MatrixFileError(f"Matrix file not found: {path}")
    try:
        if fmt == 'mm':
            matrix = scipy.io.mmread(path)
            if hasattr(matrix, 'toarray'):
                matrix = matrix.toarray()
        elif fmt == 'csv':
            matrix = np.loadtxt(path, delimiter=',', ndmin=2, dtype=np.float64)
        elif fmt == 'json':
            matrix = _read_json(path)
        else:
            raise MatrixFileError(f"Unknown matrix format '{fmt}'")
        return as_real_matrix(matrix, name=os.path.basename(path))
    except MatrixFileError:
        raise
    except (ValueError, TypeError, OSError) as e:
        raise MatrixFileError(f"Could not read matrix from {path}: {e}")
