import click
from flask import Blueprint, current_app

from superdir.commands import configured_quadrature
from superdir.models.array import ArrayGeometry
from superdir.services.radiation import RadiationService
from superdir.services.sweep import SweepService
from superdir.utils import csvio
from superdir.utils.decorators import array_options, reports_to

bp = Blueprint('impedance', __name__, cli_group=None)


@bp.cli.command('impedance')
@array_options()
@click.option('--loading', type=float, default=0.0, show_default=True, help='Diagonal loading added to Z')
@click.option('--certified', is_flag=True, help='Check the result against a doubled quadrature')
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None,
              help='CSV file for row,col,value (stdout if omitted)')
@reports_to
def impedance(antennas, spacing, pattern, loading, certified, output, report):
    """Normalized impedance matrix Z of a uniform linear array"""
    geometry = ArrayGeometry(antennas, spacing)
    element = SweepService.resolve_pattern(pattern)
    Z = RadiationService.impedance_matrix(geometry, element, configured_quadrature(), loading=loading,
                                          certified=certified,
                                          tolerance=current_app.config['IMAG_RESIDUE_TOLERANCE'])
    current_app.logger.info('Impedance matrix %s for %s', Z.geometry_hash, geometry.identifier)

    text = csvio.write_impedance(Z, output)
    if output is None:
        click.echo(text, nl=False)
    report(f'condition number: {Z.condition_number:.4g}')
