import math

import numpy as np
import pytest

from superdir.exceptions import DomainError
from superdir.models.sweep import CouplingSource, SweepSpec
from superdir.services.sweep import SweepService
from superdir.utils import csvio


def test_spacings():
    spec = SweepSpec(antennas=2, spacing_start=0.1, spacing_stop=0.5, spacing_steps=5)
    np.testing.assert_allclose(spec.spacings, [0.1, 0.2, 0.3, 0.4, 0.5])
    assert list(SweepSpec(antennas=2, spacing_start=0.3, spacing_stop=0.3).spacings) == [0.3]


@pytest.mark.parametrize('changes', [
    {'antennas': 0},
    {'spacing_start': 0.0},
    {'spacing_stop': 0.05},
    {'efficiency': 0.0},
    {'theta0': 200.0},
    {'spacing_steps': 0},
])
def test_invalid_spec(changes):
    settings = dict(antennas=2, spacing_start=0.1, spacing_stop=0.5, spacing_steps=3)
    settings.update(changes)
    with pytest.raises(DomainError):
        SweepSpec(**settings)


def test_half_wavelength_broadside_row():
    spec = SweepSpec(antennas=2, spacing_start=0.5, spacing_stop=0.5, pattern='isotropic', theta0=90.0)
    (row,) = SweepService.run_sweep(spec)
    assert row.dmax == pytest.approx(2.0, abs=1e-9)
    assert row.d_coupled == pytest.approx(2.0, abs=1e-9)
    assert row.gain == pytest.approx(2.0, abs=1e-9)
    assert not row.flagged


def test_small_spacing_approaches_uzkov_limit():
    spec = SweepSpec(antennas=2, spacing_start=0.01, spacing_stop=0.01, pattern='isotropic')
    (row,) = SweepService.run_sweep(spec)
    assert row.dmax >= 0.99 * 4


def test_coupling_compensation_row():
    spec = SweepSpec(antennas=4, spacing_start=0.1, spacing_stop=0.1,
                     coupling=CouplingSource(kind='synthetic', gamma=0.3, beta=0.5))
    (row,) = SweepService.run_sweep(spec)
    assert row.d_coupled > row.d_traditional
    assert row.d_coupled >= row.d_traditional - 1e-9
    assert row.gain <= row.d_coupled * (1 + 1e-12)


def test_swe_estimated_coupling_matches_direct():
    direct = SweepSpec(antennas=2, spacing_start=0.2, spacing_stop=0.2,
                       coupling=CouplingSource(kind='synthetic', gamma=0.3, beta=0.5))
    estimated = SweepSpec(antennas=2, spacing_start=0.2, spacing_stop=0.2,
                          coupling=CouplingSource(kind='synthetic', gamma=0.3, beta=0.5, estimate='swe'))
    (first,) = SweepService.run_sweep(direct)
    (second,) = SweepService.run_sweep(estimated)
    assert second.d_traditional == pytest.approx(first.d_traditional, rel=1e-8)
    assert second.d_coupled == pytest.approx(first.d_coupled, rel=1e-8)


def test_rows_ordered_and_independent_of_threads():
    spec = SweepSpec(antennas=3, spacing_start=0.05, spacing_stop=0.5, spacing_steps=8, efficiency=0.96,
                     coupling=CouplingSource(kind='synthetic', gamma=0.3, beta=0.5))
    serial = SweepService.run_sweep(spec, threads=1)
    parallel = SweepService.run_sweep(spec, threads=4)
    assert [row.spacing for row in serial] == sorted(row.spacing for row in serial)
    assert csvio.write_sweep(serial) == csvio.write_sweep(parallel)


def test_singular_point_is_flagged(tmp_path):
    # A coupling matrix of rank one cannot be compensated
    path = tmp_path / 'coupling.csv'
    path.write_text('row,col,re,im\n1,1,1,0\n1,2,1,0\n2,1,1,0\n2,2,1,0\n')
    spec = SweepSpec(antennas=2, spacing_start=0.2, spacing_stop=0.4, spacing_steps=2,
                     coupling=CouplingSource(kind='file', path=str(path)))
    rows = SweepService.run_sweep(spec)
    assert len(rows) == 2
    assert all(row.flagged for row in rows)
    assert all(math.isnan(row.dmax) for row in rows)
    assert 'nan' in csvio.write_sweep(rows)
    parsed = csvio.read_sweep(csvio.write_sweep(rows))
    np.testing.assert_allclose(parsed['spacing'], [0.2, 0.4])
