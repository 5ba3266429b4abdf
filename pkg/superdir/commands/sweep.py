import click
from flask import Blueprint, current_app

from superdir.commands import configured_coupling_source
from superdir.models.sweep import SweepSpec
from superdir.services.sweep import SweepService
from superdir.utils import csvio
from superdir.utils.configfile import read_config_file
from superdir.utils.decorators import reports_to
from superdir.utils.validators import parse_spacing_range

bp = Blueprint('sweep', __name__, cli_group=None)

# Keys accepted in sweep config files and how their values are parsed
CONFIG_KEYS = {
    'antennas': int,
    'pattern': str,
    'spacing': parse_spacing_range,
    'spacing_start': float,
    'spacing_stop': float,
    'spacing_steps': int,
    'theta0': float,
    'phi0': float,
    'efficiency': float,
    'coupling': configured_coupling_source,
    'quadrature_theta': int,
    'quadrature_phi': int,
    'truncation': int,
    'loading': float,
}


def _split_spacing(settings):
    if 'spacing' in settings:
        start, stop, steps = settings.pop('spacing')
        settings.update(spacing_start=start, spacing_stop=stop, spacing_steps=steps)
    return settings


def build_spec(config_path=None, **flags):
    """Sweep spec from an optional config file, overridden by non-empty flags"""
    settings = _split_spacing(read_config_file(config_path, CONFIG_KEYS) if config_path else {})
    overrides = {key: value for key, value in flags.items() if value is not None}
    if 'spacing' in overrides:
        overrides['spacing'] = parse_spacing_range(overrides['spacing'])
    if 'coupling' in overrides:
        overrides['coupling'] = configured_coupling_source(overrides['coupling'])
    settings.update(_split_spacing(overrides))

    missing = [name for name in ('antennas', 'spacing_start') if name not in settings]
    if missing:
        raise click.UsageError(f'missing sweep settings: {", ".join(missing)} (use flags or --config)')
    settings.setdefault('spacing_stop', settings['spacing_start'])
    settings.setdefault('quadrature_theta', current_app.config['QUADRATURE_THETA_NODES'])
    settings.setdefault('quadrature_phi', current_app.config['QUADRATURE_PHI_NODES'])
    return SweepSpec(**settings)


@bp.cli.command('sweep')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='key = value file; flags override its entries')
@click.option('--antennas', type=int, default=None)
@click.option('--spacing', default=None, help='start:stop:steps in wavelengths, or one spacing')
@click.option('--pattern', default=None, help='Element pattern (default half-wave-dipole)')
@click.option('--theta0', type=float, default=None, help='Steering polar angle in degrees')
@click.option('--phi0', type=float, default=None, help='Steering azimuth in degrees')
@click.option('--efficiency', type=float, default=None, help='Radiation efficiency for the gain column')
@click.option('--coupling', default=None, help='identity, file:<csv> or synthetic:gamma=<g>,beta=<b>[,estimate=swe]')
@click.option('--truncation', type=int, default=None, help='SWE truncation for estimate=swe')
@click.option('--loading', type=float, default=None, help='Diagonal loading added to Z')
@click.option('--threads', type=click.IntRange(min=1), default=None, help='Worker threads, capped by SUPERDIR_THREADS')
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None)
@reports_to
def sweep(config_path, threads, output, report, **flags):
    """Directivity and gain over a range of spacings"""
    spec = build_spec(config_path, **flags)
    cap = max(1, int(current_app.config['SUPERDIR_THREADS']))
    threads = min(threads or cap, cap)
    current_app.logger.info('Sweep of %d antennas over %d spacings, %d thread(s)',
                            spec.antennas, len(spec.spacings), threads)

    rows = SweepService.run_sweep(spec, threads=threads)
    text = csvio.write_sweep(rows, output)
    if output is None:
        click.echo(text, nl=False)

    flagged = [row for row in rows if row.flagged]
    for row in flagged:
        report(f'spacing {row.spacing:.6g} flagged: {row.flag}')
    report(f'{len(rows)} rows written, {len(flagged)} flagged')
