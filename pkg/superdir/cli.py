"""
Entry point mapping every failure to a stable exit code:
0 ok, 1 usage, 2 bad data, 3 numerical failure.
"""
import sys

import click
from flask.cli import FlaskGroup

from superdir import create_app
from superdir.exceptions import EXIT_OK, EXIT_USAGE, SuperdirError

cli = FlaskGroup(
    name='superdir',
    help='Superdirective antenna array synthesis.',
    create_app=create_app,
    add_default_commands=False,
    add_version_option=False,
    load_dotenv=False,
)


def main(argv=None):
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = cli.main(args=args, prog_name='superdir', standalone_mode=False)
    except click.exceptions.Abort:
        click.echo('Aborted!', err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except SuperdirError as e:
        click.echo(f'Error: {e}', err=True)
        return e.exit_code
    # --help and friends return their exit code instead of raising
    return result if isinstance(result, int) else EXIT_OK
