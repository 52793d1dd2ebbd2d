"""Tests for the lcft command line"""

import json

import pytest

from main import main
from utils.report import EXIT_CONFIG, EXIT_OK, VerificationReport


@pytest.fixture
def job_file(tmp_path):
    def write(text):
        path = tmp_path / 'job.yaml'
        path.write_text(text)
        return str(path)
    return write


def test_info_json(job_file, capsys):
    path = job_file("scenario: q2_i\nformat: json\n")
    assert main(['info', path]) == EXIT_OK
    info = json.loads(capsys.readouterr().out)
    assert info['e'] == 2
    assert info['f'] == 1
    assert info['galois'] is True
    assert info['upper_breaks'] == ['1']
    assert info['i_G'] == ['inf', 2]


def test_info_text(job_file, capsys):
    path = job_file("field: mixed 3 1\nextension:\n  - eisenstein [3, 0]\n")
    assert main(['info', path]) == EXIT_OK
    out = capsys.readouterr().out
    assert 'upper_breaks' in out
    assert 'order_G_u' in out


def test_verify_ramification_suite(job_file, capsys):
    path = job_file("scenario: q2_i\n")
    code = main(['verify', path, '--suite', 'ramification', '--format', 'json'])
    report = VerificationReport.from_json(capsys.readouterr().out)
    assert code == report.exit_code == EXIT_OK
    assert [c.name for c in report.checks] == [
        'galois_group', 'ramification_filtration', 'ramification_reciprocity']
    assert report.job['scenario'] == 'q2_i'


def test_config_errors_exit_2(job_file, capsys):
    path = job_file("field: mixed 2 1\nsuite: everything\n")
    assert main(['verify', path]) == EXIT_CONFIG
    assert 'line 2' in capsys.readouterr().err

    path = job_file("field: mixed 2 1\nextension:\n  - eisenstein [1, 0]\n")
    assert main(['info', path]) == EXIT_CONFIG


def test_unknown_verb_exits():
    with pytest.raises(SystemExit):
        main(['prove'])
