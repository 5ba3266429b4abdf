import click
import numpy as np
import pandas as pd
from flask import Blueprint, current_app

from superdir.commands import configured_coupling_source, configured_quadrature, format_table
from superdir.models.array import ArrayGeometry
from superdir.services.beamforming import BeamformingService
from superdir.services.radiation import RadiationService
from superdir.services.sweep import SweepService
from superdir.utils.decorators import array_options, steering_options

bp = Blueprint('beamform', __name__, cli_group=None)


def _excitation_table(excitation):
    return pd.DataFrame({
        'element': np.arange(1, len(excitation) + 1),
        're': excitation.real,
        'im': excitation.imag,
        'magnitude': np.abs(excitation),
        'phase_deg': np.rad2deg(np.angle(excitation)),
    })


@bp.cli.command('beamform')
@array_options(default_spacing=0.5)
@steering_options
@click.option('--coupling', default='identity', show_default=True,
              help='identity, file:<csv> or synthetic:gamma=<g>,beta=<b>[,estimate=swe]')
@click.option('--efficiency', type=float, default=1.0, show_default=True, help='Radiation efficiency in (0, 1]')
@click.option('--loading', type=float, default=0.0, show_default=True, help='Diagonal loading added to Z')
@click.option('--gain-optimal', is_flag=True, help='Maximize gain instead of directivity')
def beamform(antennas, spacing, pattern, theta0, phi0, coupling, efficiency, loading, gain_optimal):
    """Optimal excitation and its directivity for one array"""
    config = current_app.config
    geometry = ArrayGeometry(antennas, spacing)
    element = SweepService.resolve_pattern(pattern)
    source = configured_coupling_source(coupling)

    Z = RadiationService.impedance_matrix(geometry, element, configured_quadrature(), loading=loading,
                                          tolerance=config['IMAG_RESIDUE_TOLERANCE'])
    e = geometry.steering_vector(element, np.deg2rad(theta0), np.deg2rad(phi0))
    C = SweepService.resolve_coupling(source, geometry, element)

    traditional = BeamformingService.optimal_beamforming(Z, e, config['CONDITION_WARNING'])
    if gain_optimal:
        solution = BeamformingService.gain_optimal_beamforming(Z, C, e, efficiency, config['CONDITION_WARNING'])
    else:
        solution = BeamformingService.coupled_beamforming(Z, C, e, config['CONDITION_WARNING'])
        if efficiency < 1.0:
            solution = BeamformingService.with_gain(solution, Z, C, e, efficiency)

    rows = [('Dmax', traditional.directivity)]
    if source.kind != 'identity':
        rows.append(('D_traditional', BeamformingService.coupled_directivity(Z, C, e, traditional.excitation)))
        rows.append(('D_coupled', solution.directivity))
    elif gain_optimal:
        rows.append(('D', solution.directivity))
    if solution.gain is not None:
        rows.append(('gain', solution.gain))
    figures = pd.DataFrame(rows, columns=['quantity', 'linear'])
    figures['dBi'] = 10.0 * np.log10(figures['linear'])

    click.echo(f'{geometry.identifier} pattern={element.identifier} coupling={source} '
               f'theta0={theta0:g} phi0={phi0:g}')
    click.echo(format_table(figures))
    click.echo(f'condition number Z: {solution.condition_number_Z:.4g}')
    click.echo('')
    click.echo(format_table(_excitation_table(solution.excitation)))
