"""Tests for job file parsing and validation"""

import pytest

from utils.config import (
    DEFAULT_PRECISION, PRECISION_ENV, build_tower, default_precision, job_from_dict,
    load_job, parse_field_spec, parse_step,
)
from utils.errors import ConfigError


def test_parse_field_spec():
    assert parse_field_spec('mixed 2 1') == ('mixed', 2, 1, [])
    assert parse_field_spec('equal 4') == ('equal', 2, 2, [])
    assert parse_field_spec('mixed 2 1 eisenstein [2, -2]') == ('mixed', 2, 1, [[2, -2]])
    kind, p, m, layers = parse_field_spec('mixed 3 2 eisenstein [[0, 1], 0]')
    assert (kind, p, m) == ('mixed', 3, 2)
    assert layers == [[(0, 1), 0]]


@pytest.mark.parametrize("spec", [
    'mixed 2', 'equal 6', 'mixed 4 1', 'other 2 1', 'mixed 2 1 eisenstein [2, -2',
    'mixed 2 1 cyclotomic [1]',
])
def test_bad_field_specs(spec):
    with pytest.raises(ValueError):
        parse_field_spec(spec)


def test_parse_step():
    assert parse_step('unram 2') == ('unram', 2)
    assert parse_step({'unramified': 3}) == ('unram', 3)
    assert parse_step('eisenstein [2, -2]') == ('eisenstein', [2, -2])
    for bad in ['unram 0', 'unram', {'unram': 2, 'eisenstein': [2]}, 'sqrt 2', 7]:
        with pytest.raises(ValueError):
            parse_step(bad)


def test_job_defaults_and_overrides():
    job = job_from_dict({'field': 'mixed 2 1', 'extension': ['eisenstein [2, -2]'], 'rmax': 3},
                        overrides={'rmax': 5, 'suite': None})
    assert job.rmax == 5
    assert job.suite == 'all'
    assert job.units == [-1, 3, 5]


def test_scenario_job():
    job = job_from_dict({'scenario': 'q2_i'})
    assert job.field_spec == 'mixed 2 1'
    assert job.scenario == 'q2_i'
    base, ext = build_tower(job)
    assert ext.degree == 2
    assert ext.e == 2
    with pytest.raises(ConfigError):
        job_from_dict({'scenario': 'nonexistent'})


@pytest.mark.parametrize("data", [
    {'extension': ['unram 2']},
    {'field': 'mixed 2 1', 'colour': 'red'},
    {'field': 'mixed 2 1', 'precision': 2},
    {'field': 'mixed 2 1', 'suite': 'everything'},
    {'field': 'mixed 2 1', 'format': 'xml'},
    {'field': 'mixed 2 1', 'extension': 'unram 2'},
    {'field': 'mixed 2 1', 'units': [1, 'two']},
    [1, 2],
])
def test_invalid_jobs(data):
    with pytest.raises(ConfigError):
        job_from_dict(data)


def test_precision_env(monkeypatch):
    monkeypatch.delenv(PRECISION_ENV, raising=False)
    assert default_precision() == DEFAULT_PRECISION
    monkeypatch.setenv(PRECISION_ENV, '32')
    assert job_from_dict({'field': 'mixed 2 1'}).precision == 32
    assert job_from_dict({'field': 'mixed 2 1', 'precision': 12}).precision == 12
    monkeypatch.setenv(PRECISION_ENV, 'many')
    with pytest.raises(ConfigError):
        default_precision()


def test_errors_carry_line_and_column(tmp_path):
    path = tmp_path / 'job.yaml'
    path.write_text("field: mixed 2 1\nextension:\n  - unram 2\nsuite: everything\n")
    with pytest.raises(ConfigError) as info:
        load_job(str(path))
    assert info.value.line == 4
    assert info.value.column == 1

    path.write_text("field: mixed 2 1\nextension: [unram 2\n")
    with pytest.raises(ConfigError) as info:
        load_job(str(path))
    assert info.value.line is not None

    with pytest.raises(ConfigError):
        load_job(str(tmp_path / 'missing.yaml'))


def test_non_eisenstein_tower_is_a_config_error():
    job = job_from_dict({'field': 'mixed 2 1', 'extension': ['eisenstein [1, 0]']})
    with pytest.raises(ConfigError):
        build_tower(job)
