import logging

from flask import Flask

from superdir.config import Config


def create_app(config_class=Config):
    app = Flask(__name__)
    app.config.from_object(config_class)

    # Library loggers live under 'superdir' and reach Flask's stderr handler
    level = logging.getLevelName(str(app.config['SUPERDIR_LOG_LEVEL']).upper())
    app.logger.setLevel(level if isinstance(level, int) else logging.WARNING)

    # Register command blueprints
    from superdir.commands import beamform, coupling, impedance, pattern, swe, sweep
    app.register_blueprint(impedance.bp)
    app.register_blueprint(beamform.bp)
    app.register_blueprint(pattern.bp)
    app.register_blueprint(sweep.bp)
    app.register_blueprint(swe.bp)
    app.register_blueprint(coupling.bp)

    return app
