"""
CSV formats for field samples, wave coefficients, coupling and impedance
matrices, sweeps and directivity patterns

Floats are written with 17 significant digits and parsed with Python's
correctly rounded float(), so numbers survive a write/read cycle bit for bit.
"""
import io
from pathlib import Path

import numpy as np
import pandas as pd

from superdir.exceptions import DataError, SuperdirError
from superdir.models.array import ElementPattern
from superdir.models.coupling import CouplingMatrix
from superdir.models.fields import FieldSampleSet, SweIndex, WaveCoefficientSet

FIELD_COLUMNS = ['theta_deg', 'phi_deg', 're_etheta', 'im_etheta', 're_ephi', 'im_ephi']
COEFFICIENT_COLUMNS = ['s', 'm', 'n', 're', 'im']
COUPLING_COLUMNS = ['row', 'col', 're', 'im']
IMPEDANCE_COLUMNS = ['row', 'col', 'value']
SWEEP_COLUMNS = ['spacing', 'dmax', 'd_traditional', 'd_coupled', 'gain', 'cond_z']
PATTERN_COLUMNS = ['theta_deg', 'phi_deg', 'directivity', 'directivity_dbi']

FLOAT_FORMAT = '%.17g'


def _read_table(path, columns, integer_columns=()):
    """Read a CSV with a fixed header; errors name the offending line"""
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except FileNotFoundError:
        raise DataError('file not found', path=path)
    except pd.errors.EmptyDataError:
        raise DataError('file is empty', path=path)
    except pd.errors.ParserError as e:
        raise DataError(f'malformed CSV: {e}', path=path) from e

    header = [str(name).strip() for name in frame.columns]
    if header != columns:
        raise DataError(f'expected header {",".join(columns)}, found {",".join(header)}', line=1, path=path)

    parsed = {}
    for column in columns:
        convert = int if column in integer_columns else float
        values = []
        for offset, text in enumerate(frame[column].tolist()):
            # Header is line 1
            line = offset + 2
            if not isinstance(text, str) or not text.strip():
                raise DataError(f'missing value in column {column}', line=line, path=path)
            try:
                values.append(convert(text.strip()))
            except ValueError:
                raise DataError(f'cannot parse {text!r} in column {column}', line=line, path=path)
        parsed[column] = np.array(values, dtype=int if convert is int else float)
    return parsed


def _complex(real, imag):
    """Assemble complex values without disturbing signed zeros"""
    values = np.empty(np.shape(real), dtype=complex)
    values.real = real
    values.imag = imag
    return values


def _write_table(frame, path=None):
    """Write to a path, or return the CSV text when no path is given"""
    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n', na_rep='nan')
    if path is None:
        return text
    Path(path).write_text(text)
    return text


def read_field_samples(path):
    table = _read_table(path, FIELD_COLUMNS)
    theta = np.deg2rad(table['theta_deg'])
    phi = np.deg2rad(table['phi_deg'])
    if np.any(theta < 0) or np.any(theta > np.pi):
        raise DataError('theta_deg must lie in [0, 180]', path=path)
    try:
        return FieldSampleSet.from_components(
            theta, phi,
            _complex(table['re_etheta'], table['im_etheta']),
            _complex(table['re_ephi'], table['im_ephi']))
    except DataError as e:
        raise DataError(str(e), path=path) from e


def write_field_samples(samples, path=None):
    frame = pd.DataFrame({
        'theta_deg': np.rad2deg(samples.theta),
        'phi_deg': np.rad2deg(samples.phi),
        're_etheta': samples.e_theta.real,
        'im_etheta': samples.e_theta.imag,
        're_ephi': samples.e_phi.real,
        'im_ephi': samples.e_phi.imag,
    }, columns=FIELD_COLUMNS)
    return _write_table(frame, path)


def read_field_library(paths):
    """Several field files that must share one direction grid"""
    fields = [read_field_samples(path) for path in paths]
    for path, samples in zip(paths[1:], fields[1:]):
        if not fields[0].same_grid(samples):
            raise DataError(f'direction grid differs from {paths[0]}', path=path)
    return fields


def read_pattern_file(path):
    """Sampled element pattern from a field file on a full theta x phi grid

    The scalar pattern is the total field magnitude; a phase common to all
    elements cancels out of every directivity expression.
    """
    samples = read_field_samples(path)
    theta_nodes = np.unique(samples.theta)
    phi_nodes = np.unique(samples.phi)
    if len(theta_nodes) * len(phi_nodes) != samples.direction_count:
        raise DataError('pattern samples do not form a full theta x phi grid', path=path)

    magnitude = np.sqrt(np.abs(samples.e_theta) ** 2 + np.abs(samples.e_phi) ** 2)
    grid = np.zeros((len(theta_nodes), len(phi_nodes)))
    rows = np.searchsorted(theta_nodes, samples.theta)
    columns = np.searchsorted(phi_nodes, samples.phi)
    grid[rows, columns] = magnitude
    return ElementPattern.sampled(theta_nodes, phi_nodes, grid)


def read_coefficients(path):
    table = _read_table(path, COEFFICIENT_COLUMNS, integer_columns=('s', 'm', 'n'))
    truncation = int(table['n'].max()) if len(table['n']) else 0
    coefficients = np.zeros(2 * truncation * (truncation + 2), dtype=complex)
    seen = set()
    for row, (s, m, n) in enumerate(zip(table['s'], table['m'], table['n'])):
        try:
            index = SweIndex(int(s), int(n), int(m))
        except SuperdirError as e:
            raise DataError(str(e), line=row + 2, path=path) from e
        if index in seen:
            raise DataError(f'duplicate coefficient {index}', line=row + 2, path=path)
        seen.add(index)
        coefficients[index.position] = complex(table['re'][row], table['im'][row])
    return WaveCoefficientSet(coefficients=coefficients, truncation=truncation)


def write_coefficients(coefficients, path=None):
    indices = SweIndex.ordering(coefficients.truncation)
    frame = pd.DataFrame({
        's': [index.s for index in indices],
        'm': [index.m for index in indices],
        'n': [index.n for index in indices],
        're': coefficients.coefficients.real,
        'im': coefficients.coefficients.imag,
    }, columns=COEFFICIENT_COLUMNS)
    return _write_table(frame, path)


def read_coupling(path):
    """Coupling matrix from row,col,re,im records (1-based indices)"""
    table = _read_table(path, COUPLING_COLUMNS, integer_columns=('row', 'col'))
    if not len(table['row']):
        raise DataError('coupling file has no entries', path=path)
    size = int(max(table['row'].max(), table['col'].max()))
    if len(table['row']) != size * size:
        raise DataError(f'expected {size * size} entries for a {size}x{size} matrix, '
                        f'found {len(table["row"])}', path=path)
    values = np.full((size, size), np.nan, dtype=complex)
    for offset, (row, col) in enumerate(zip(table['row'], table['col'])):
        if not (1 <= row <= size and 1 <= col <= size) or not np.isnan(values[row - 1, col - 1]):
            raise DataError(f'invalid or repeated entry ({row}, {col})', line=offset + 2, path=path)
        values[row - 1, col - 1] = complex(table['re'][offset], table['im'][offset])
    return CouplingMatrix(values=values, source='prescribed')


def write_coupling(coupling, path=None):
    values = getattr(coupling, 'values', coupling)
    size = values.shape[0]
    rows, cols = np.divmod(np.arange(size * size), size)
    frame = pd.DataFrame({
        'row': rows + 1,
        'col': cols + 1,
        're': values.real.ravel(),
        'im': values.imag.ravel(),
    }, columns=COUPLING_COLUMNS)
    return _write_table(frame, path)


def write_impedance(Z, path=None):
    size = Z.size
    rows, cols = np.divmod(np.arange(size * size), size)
    frame = pd.DataFrame({
        'row': rows + 1,
        'col': cols + 1,
        'value': Z.values.ravel(),
    }, columns=IMPEDANCE_COLUMNS)
    return _write_table(frame, path)


def write_sweep(rows, path=None):
    frame = pd.DataFrame([[getattr(row, column) for column in SWEEP_COLUMNS] for row in rows],
                         columns=SWEEP_COLUMNS)
    return _write_table(frame, path)


def write_pattern(theta, phi, directivity, path=None):
    directivity = np.ravel(directivity)
    with np.errstate(divide='ignore'):
        dbi = 10.0 * np.log10(directivity)
    frame = pd.DataFrame({
        'theta_deg': np.rad2deg(np.ravel(theta)),
        'phi_deg': np.rad2deg(np.ravel(phi)),
        'directivity': directivity,
        'directivity_dbi': dbi,
    }, columns=PATTERN_COLUMNS)
    return _write_table(frame, path)


def read_sweep(source):
    """Parse sweep output back into columns (text or path)"""
    if isinstance(source, str) and '\n' in source:
        source = io.StringIO(source)
    return _read_table(source, SWEEP_COLUMNS)
