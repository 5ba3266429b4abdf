"""Shared click options for the command blueprints"""
import functools

import click

from superdir.models.array import PATTERN_KINDS


def array_options(default_pattern='isotropic', default_spacing=None):
    """--antennas, --spacing (wavelengths) and --pattern; spacing is required without a default"""
    def decorator(f):
        f = click.option('--pattern', default=default_pattern, show_default=True,
                         help=f'Element pattern: {", ".join(PATTERN_KINDS[:-1])} or sampled:<field csv>')(f)
        f = click.option('--spacing', type=float, required=default_spacing is None, default=default_spacing,
                         show_default=default_spacing is not None, help='Element spacing in wavelengths')(f)
        f = click.option('--antennas', type=int, required=True, help='Number of elements')(f)
        return f
    return decorator


def steering_options(f):
    """--theta0 and --phi0 in degrees"""
    f = click.option('--phi0', type=float, default=0.0, show_default=True, help='Steering azimuth in degrees')(f)
    f = click.option('--theta0', type=click.FloatRange(0.0, 180.0), default=0.0, show_default=True,
                     help='Steering polar angle in degrees (0 is endfire)')(f)
    return f


def truncation_options(f):
    """--truncation, or --radius with --radius-unit and --frequency"""
    f = click.option('--frequency', type=float, default=None,
                     help='Frequency in Hz for meter-valued radii')(f)
    f = click.option('--radius-unit', type=click.Choice(['wavelength', 'm']), default='wavelength',
                     show_default=True)(f)
    f = click.option('--radius', type=float, default=None, help='Radius of the sphere enclosing the source')(f)
    f = click.option('--truncation', type=int, default=None, help='Highest spherical mode degree N')(f)
    return f


def reports_to(f):
    """Send the summary to stderr when the data itself goes to stdout"""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        output = kwargs.get('output')

        def report(message):
            click.echo(message, err=output is None)

        return f(*args, report=report, **kwargs)
    return wrapper
