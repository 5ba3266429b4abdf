from pathlib import Path

import click
import numpy as np
from flask import Blueprint, current_app

from superdir.exceptions import DimensionError
from superdir.models.array import ArrayGeometry
from superdir.models.coupling import CouplingMatrix, ElementFieldLibrary
from superdir.services.coupling import CouplingService
from superdir.services.sweep import SweepService
from superdir.utils import csvio
from superdir.utils.decorators import array_options, reports_to, truncation_options
from superdir.utils.validators import infer_truncation, resolve_truncation

bp = Blueprint('coupling', __name__)


@bp.cli.command('estimate')
@click.option('--isolated', 'isolated_paths', multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False), help='Isolated-element field CSV, once per element')
@click.option('--active', 'active_paths', multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False), help='Active-element field CSV, once per element')
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None,
              help='Coupling CSV row,col,re,im (stdout if omitted)')
@truncation_options
@reports_to
def estimate(isolated_paths, active_paths, output, truncation, radius, radius_unit, frequency, report):
    """Coupling matrix from isolated and active element fields"""
    if len(isolated_paths) != len(active_paths):
        raise DimensionError(f'{len(isolated_paths)} isolated files but {len(active_paths)} active files')

    fields = csvio.read_field_library(list(isolated_paths) + list(active_paths))
    count = len(isolated_paths)
    frequency = frequency or current_app.config['DEFAULT_FREQUENCY_HZ']
    degree = resolve_truncation(truncation, radius, radius_unit, frequency)
    if degree is None:
        degree = infer_truncation(fields[0])
        current_app.logger.info('No truncation given; using N=%d from the sample grid', degree)

    library = ElementFieldLibrary(isolated=fields[:count], active=fields[count:])
    coupling = CouplingService.estimate_from_library(library, degree)

    text = csvio.write_coupling(coupling, output)
    if output is None:
        click.echo(text, nl=False)
    report(f'residual: {coupling.estimation_residual:.3e}')


@bp.cli.command('synth')
@array_options()
@click.option('--gamma', type=float, default=None, help='Fixture coupling magnitude per element step')
@click.option('--beta', type=float, default=None, help='Fixture coupling phase per element step (radians)')
@click.option('--coupling-file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Prescribed coupling CSV instead of the fixture')
@click.option('--truncation', type=int, default=None, help='Grid for truncation N (default from the array size)')
@click.option('--noise', type=click.FloatRange(min=0.0), default=0.0, show_default=True,
              help='Relative complex Gaussian noise added to the active fields')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--output-dir', type=click.Path(file_okay=False), required=True)
def synth(antennas, spacing, pattern, gamma, beta, coupling_file, truncation, noise, seed, output_dir):
    """Synthetic isolated and active element fields for a known coupling"""
    config = current_app.config
    geometry = ArrayGeometry(antennas, spacing)
    element = SweepService.resolve_pattern(pattern)
    if coupling_file:
        coupling = csvio.read_coupling(coupling_file)
        if coupling.size != antennas:
            raise DimensionError(f'{coupling_file} holds a {coupling.size}x{coupling.size} matrix '
                                 f'for {antennas} antennas')
    else:
        coupling = CouplingMatrix.fixture(antennas,
                                          config['FIXTURE_GAMMA'] if gamma is None else gamma,
                                          config['FIXTURE_BETA'] if beta is None else beta)

    library = CouplingService.synthetic_library(geometry, element, coupling, truncation)
    active = library.active
    if noise:
        rng = np.random.default_rng(seed)
        active = [CouplingService.add_noise(samples, noise, rng) for samples in active]

    directory = Path(output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    for m, (isolated_samples, active_samples) in enumerate(zip(library.isolated, active), start=1):
        csvio.write_field_samples(isolated_samples, directory / f'isolated_{m}.csv')
        csvio.write_field_samples(active_samples, directory / f'active_{m}.csv')
    csvio.write_coupling(coupling, directory / 'coupling_true.csv')
    click.echo(f'wrote {antennas} isolated and {antennas} active field files to {directory}')
