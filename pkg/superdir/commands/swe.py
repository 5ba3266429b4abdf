import click
from flask import Blueprint, current_app

from superdir.services.swe import SweService
from superdir.utils import csvio
from superdir.utils.decorators import reports_to, truncation_options
from superdir.utils.validators import infer_truncation, resolve_truncation

bp = Blueprint('swe', __name__)


@bp.cli.command('fit')
@click.option('--input', 'input_path', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Field CSV theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi')
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None,
              help='Coefficient CSV s,m,n,re,im (stdout if omitted)')
@truncation_options
@reports_to
def fit(input_path, output, truncation, radius, radius_unit, frequency, report):
    """Spherical wave coefficients of a sampled far field"""
    samples = csvio.read_field_samples(input_path)
    frequency = frequency or current_app.config['DEFAULT_FREQUENCY_HZ']
    degree = resolve_truncation(truncation, radius, radius_unit, frequency)
    if degree is None:
        degree = infer_truncation(samples)
        current_app.logger.info('No truncation given; using N=%d from the sample grid', degree)

    coefficients = SweService.fit_wave_coefficients(samples, degree)
    text = csvio.write_coefficients(coefficients, output)
    if output is None:
        click.echo(text, nl=False)
    report(f'truncation {degree}: {len(coefficients.coefficients)} coefficients, '
           f'relative residual {coefficients.residual:.3e}')
