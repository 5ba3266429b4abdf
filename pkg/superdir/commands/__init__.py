"""Command-line surface, one blueprint per command group"""
from flask import current_app

from superdir.models.radiation import SphereQuadrature
from superdir.utils.validators import parse_coupling_source


def configured_quadrature():
    return SphereQuadrature(current_app.config['QUADRATURE_THETA_NODES'],
                            current_app.config['QUADRATURE_PHI_NODES'])


def configured_coupling_source(text):
    """Coupling source whose synthetic fixture defaults come from the app config"""
    return parse_coupling_source(text, current_app.config['FIXTURE_GAMMA'], current_app.config['FIXTURE_BETA'])


def _significant(value):
    # Roundoff-sized values print as plain zero
    return f'{value:.4g}' if abs(value) >= 1e-12 else '0'


def format_table(frame):
    """Human-readable table at 4 significant digits"""
    return frame.to_string(index=False, float_format=_significant)
