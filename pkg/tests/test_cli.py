import re

import numpy as np
import pandas as pd
import pytest

from superdir import config as superdir_config
from superdir import create_app
from superdir.cli import main
from superdir.exceptions import DataError, EXIT_DATA, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE
from superdir.models.array import ElementPattern
from superdir.models.coupling import CouplingMatrix
from superdir.models.fields import FieldSampleSet, SweIndex
from superdir.services.swe import SweService
from superdir.utils import csvio


def test_commands_are_registered(app):
    commands = set(app.cli.list_commands(None))
    assert {'impedance', 'beamform', 'pattern', 'sweep', 'swe', 'coupling'} <= commands


def test_impedance_command(runner, tmp_path):
    output = tmp_path / 'z.csv'
    result = runner.invoke(args=['impedance', '--antennas', '2', '--spacing', '0.25', '--output', str(output)])
    assert result.exit_code == 0, result.output
    assert 'condition number' in result.output
    table = pd.read_csv(output)
    assert list(table.columns) == ['row', 'col', 'value']
    assert table['value'][1] == pytest.approx(2 / np.pi, abs=1e-10)


def test_beamform_single_element(runner):
    result = runner.invoke(args=['beamform', '--antennas', '1'])
    assert result.exit_code == 0, result.output
    assert re.search(r'Dmax\s+1\s+0\b', result.output)
    assert re.search(r'^\s*1\s+1\s+0\s+1\s+0\s*$', result.output, re.MULTILINE)


def test_beamform_with_coupling_and_loss(runner):
    result = runner.invoke(args=['beamform', '--antennas', '4', '--spacing', '0.1', '--pattern', 'half-wave-dipole',
                                 '--coupling', 'synthetic:gamma=0.3,beta=0.5', '--efficiency', '0.96'])
    assert result.exit_code == 0, result.output
    for label in ('Dmax', 'D_traditional', 'D_coupled', 'gain', 'dBi'):
        assert label in result.output


def test_beamform_gain_optimal(runner):
    result = runner.invoke(args=['beamform', '--antennas', '3', '--spacing', '0.15', '--efficiency', '0.9',
                                 '--gain-optimal'])
    assert result.exit_code == 0, result.output
    assert 'gain' in result.output


def test_pattern_command(runner, tmp_path):
    output = tmp_path / 'pattern.csv'
    result = runner.invoke(args=['pattern', '--antennas', '2', '--spacing', '0.5', '--theta0', '90',
                                 '--theta-step', '30', '--phi-step', '90', '--output', str(output)])
    assert result.exit_code == 0, result.output
    table = pd.read_csv(output)
    assert list(table.columns) == csvio.PATTERN_COLUMNS
    assert len(table) == 7 * 4
    broadside = table[np.isclose(table['theta_deg'], 90.0) & np.isclose(table['phi_deg'], 0.0)]
    assert broadside['directivity'].iloc[0] == pytest.approx(2.0, abs=1e-9)


def test_sweep_command(runner, tmp_path):
    output = tmp_path / 'sweep.csv'
    result = runner.invoke(args=['sweep', '--antennas', '2', '--pattern', 'isotropic', '--spacing', '0.5:0.5:1',
                                 '--theta0', '90', '--output', str(output)])
    assert result.exit_code == 0, result.output
    assert output.read_text().splitlines()[0] == 'spacing,dmax,d_traditional,d_coupled,gain,cond_z'
    table = csvio.read_sweep(output)
    assert len(table['dmax']) == 1
    assert table['dmax'][0] == pytest.approx(2.0, abs=1e-9)


def test_sweep_output_independent_of_threads(runner, tmp_path):
    outputs = []
    for threads in ('1', '2'):
        output = tmp_path / f'sweep_{threads}.csv'
        result = runner.invoke(args=['sweep', '--antennas', '3', '--spacing', '0.05:0.5:6', '--efficiency', '0.96',
                                     '--coupling', 'synthetic', '--threads', threads, '--output', str(output)])
        assert result.exit_code == 0, result.output
        outputs.append(output.read_bytes())
    assert outputs[0] == outputs[1]


def test_synthetic_coupling_uses_configured_fixture(runner, tmp_path):
    class StrongCouplingConfig(superdir_config.TestConfig):
        FIXTURE_GAMMA = 0.45

    def run(cli_runner, coupling, name):
        output = tmp_path / name
        result = cli_runner.invoke(args=['sweep', '--antennas', '3', '--spacing', '0.1',
                                         '--coupling', coupling, '--output', str(output)])
        assert result.exit_code == 0, result.output
        return output.read_bytes()

    configured = run(create_app(StrongCouplingConfig).test_cli_runner(), 'synthetic', 'configured.csv')
    assert configured == run(runner, 'synthetic:gamma=0.45,beta=0.5', 'explicit.csv')
    assert configured != run(runner, 'synthetic', 'default.csv')


def test_sweep_config_file_and_overrides(runner, tmp_path):
    config = tmp_path / 'sweep.conf'
    config.write_text('# isotropic pair\nantennas = 2\npattern = isotropic\nspacing = 0.1:0.5:3\ntheta0 = 90\n')
    output = tmp_path / 'sweep.csv'
    result = runner.invoke(args=['sweep', '--config', str(config), '--output', str(output)])
    assert result.exit_code == 0, result.output
    np.testing.assert_allclose(csvio.read_sweep(output)['spacing'], [0.1, 0.3, 0.5])

    result = runner.invoke(args=['sweep', '--config', str(config), '--spacing', '0.5', '--output', str(output)])
    assert result.exit_code == 0, result.output
    assert csvio.read_sweep(output)['dmax'][0] == pytest.approx(2.0, abs=1e-9)


def test_sweep_config_rejects_unknown_key(runner, tmp_path):
    config = tmp_path / 'sweep.conf'
    config.write_text('antennas = 2\nspacings = 0.1:0.5:3\n')
    result = runner.invoke(args=['sweep', '--config', str(config)])
    assert isinstance(result.exception, DataError)
    assert f'{config}:2:' in str(result.exception)


def test_swe_fit_command(runner, tmp_path):
    pattern = ElementPattern.from_name('hertzian-dipole', axis=(0.0, 0.0, 1.0))
    theta, phi = SweService.default_grid(3)
    field = tmp_path / 'field.csv'
    csvio.write_field_samples(FieldSampleSet.from_components(theta, phi, *pattern.field(theta, phi)), field)

    output = tmp_path / 'coefficients.csv'
    result = runner.invoke(args=['swe', 'fit', '--input', str(field), '--output', str(output), '--truncation', '3'])
    assert result.exit_code == 0, result.output
    assert 'relative residual' in result.output
    coefficients = csvio.read_coefficients(output)
    assert coefficients.truncation == 3
    assert abs(coefficients[SweIndex(2, 1, 0)]) > 0.1
    assert abs(coefficients[SweIndex(1, 1, 0)]) < 1e-8


def test_coupling_synth_and_estimate(runner, tmp_path):
    result = runner.invoke(args=['coupling', 'synth', '--antennas', '3', '--spacing', '0.2',
                                 '--pattern', 'half-wave-dipole', '--output-dir', str(tmp_path)])
    assert result.exit_code == 0, result.output
    for m in (1, 2, 3):
        assert (tmp_path / f'isolated_{m}.csv').exists()
        assert (tmp_path / f'active_{m}.csv').exists()

    output = tmp_path / 'coupling.csv'
    args = ['coupling', 'estimate', '--output', str(output)]
    for m in (1, 2, 3):
        args += ['--isolated', str(tmp_path / f'isolated_{m}.csv')]
    for m in (1, 2, 3):
        args += ['--active', str(tmp_path / f'active_{m}.csv')]
    result = runner.invoke(args=args)
    assert result.exit_code == 0, result.output

    residual = float(re.search(r'residual: (\S+)', result.output).group(1))
    assert residual < 1e-9
    truth = csvio.read_coupling(tmp_path / 'coupling_true.csv')
    np.testing.assert_allclose(csvio.read_coupling(output).values, truth.values, atol=1e-8)
    np.testing.assert_allclose(truth.values, CouplingMatrix.fixture(3, 0.3, 0.5).values, atol=1e-15)


def test_exit_code_ok():
    assert main(['beamform', '--antennas', '1']) == EXIT_OK
    assert main(['--help']) == EXIT_OK


def test_exit_code_usage():
    assert main(['beamform']) == EXIT_USAGE
    assert main(['no-such-command']) == EXIT_USAGE
    assert main(['beamform', '--antennas', 'two']) == EXIT_USAGE
    assert main(['sweep', '--pattern', 'isotropic']) == EXIT_USAGE


def test_exit_code_data(tmp_path):
    broken = tmp_path / 'broken.csv'
    broken.write_text('theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi\n10,20,x,0,0,0\n')
    assert main(['coupling', 'estimate', '--isolated', str(broken), '--active', str(broken)]) == EXIT_DATA
    assert main(['beamform', '--antennas', '2', '--spacing=-0.1']) == EXIT_DATA
    assert main(['beamform', '--antennas', '2', '--pattern', 'yagi']) == EXIT_DATA


def test_exit_code_data_for_insufficient_sampling(tmp_path):
    theta, phi = SweService.default_grid(3)
    field = tmp_path / 'field.csv'
    pattern = ElementPattern.from_name('hertzian-dipole')
    csvio.write_field_samples(FieldSampleSet.from_components(theta, phi, *pattern.field(theta, phi)), field)
    # 0.1 m at 845 MHz is about 0.28 wavelengths, so N = 12 needs far more samples
    assert main(['swe', 'fit', '--input', str(field), '--radius', '0.1', '--radius-unit', 'm',
                 '--frequency', '845e6']) == EXIT_DATA


def test_exit_code_numerical(tmp_path):
    coupling = tmp_path / 'coupling.csv'
    csvio.write_coupling(CouplingMatrix(values=np.ones((2, 2))), coupling)
    assert main(['beamform', '--antennas', '2', '--spacing', '0.3', '--coupling', f'file:{coupling}']) == EXIT_NUMERICAL
