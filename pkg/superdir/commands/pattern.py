import click
import numpy as np
from flask import Blueprint, current_app

from superdir.commands import configured_coupling_source, configured_quadrature
from superdir.models.array import ArrayGeometry
from superdir.services.beamforming import BeamformingService
from superdir.services.radiation import RadiationService
from superdir.services.sweep import SweepService
from superdir.utils import csvio
from superdir.utils.decorators import array_options, reports_to, steering_options
from superdir.utils.validators import degrees_grid

bp = Blueprint('pattern', __name__, cli_group=None)


@bp.cli.command('pattern')
@array_options()
@steering_options
@click.option('--coupling', default='identity', show_default=True,
              help='identity, file:<csv> or synthetic:gamma=<g>,beta=<b>[,estimate=swe]')
@click.option('--excitation', 'method', type=click.Choice(['traditional', 'coupled']), default='coupled',
              show_default=True, help='Excitation synthesized without or with coupling compensation')
@click.option('--theta-step', type=click.FloatRange(min=0.0, min_open=True), default=5.0, show_default=True)
@click.option('--phi-step', type=click.FloatRange(min=0.0, min_open=True), default=5.0, show_default=True)
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None)
@reports_to
def pattern(antennas, spacing, pattern, theta0, phi0, coupling, method, theta_step, phi_step, output, report):
    """Directivity pattern over the sphere, evaluated under the coupling model"""
    config = current_app.config
    geometry = ArrayGeometry(antennas, spacing)
    element = SweepService.resolve_pattern(pattern)
    C = SweepService.resolve_coupling(configured_coupling_source(coupling), geometry, element)

    Z = RadiationService.impedance_matrix(geometry, element, configured_quadrature(),
                                          tolerance=config['IMAG_RESIDUE_TOLERANCE'])
    e = geometry.steering_vector(element, np.deg2rad(theta0), np.deg2rad(phi0))
    if method == 'traditional':
        solution = BeamformingService.optimal_beamforming(Z, e, config['CONDITION_WARNING'])
    else:
        solution = BeamformingService.coupled_beamforming(Z, C, e, config['CONDITION_WARNING'])

    theta, phi = degrees_grid(theta_step, phi_step)
    directivity = RadiationService.directivity_pattern(geometry, element, Z, solution.excitation,
                                                       theta, phi, coupling=C)
    text = csvio.write_pattern(theta, phi, directivity, output)
    if output is None:
        click.echo(text, nl=False)
    peak = int(np.argmax(directivity))
    report(f'peak directivity {directivity[peak]:.4g} at theta={np.rad2deg(theta[peak]):g} '
           f'phi={np.rad2deg(phi[peak]):g}')
