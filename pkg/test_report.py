"""Tests for check results, verdict mapping and report serialization"""

from fractions import Fraction

import pytest

from utils.errors import InconclusiveError, PrecisionError, StructuralError
from utils.report import (
    EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, FAIL, INCONCLUSIVE, PASS,
    CheckResult, VerificationReport, run_check,
)


def make(name, verdict, **kwargs):
    return CheckResult(name, f"anchor of {name}", verdict, **kwargs)


def test_unknown_verdict_rejected():
    with pytest.raises(ValueError):
        make('x', 'maybe')


def test_values_are_normalised():
    result = make('herbrand', PASS, groups={'q': Fraction(1, 2), 'order': Fraction(4, 1),
                                            'factors': (2, 4)})
    assert result.groups == {'q': '1/2', 'order': 4, 'factors': [2, 4]}
    assert result.passed


def test_run_check_maps_errors():
    def inconclusive():
        raise InconclusiveError("levels disagree", obstruction={'levels': [4, 8]})

    def structural():
        raise StructuralError("bad table")

    def precision():
        raise PrecisionError("out of digits", required=40)

    r = run_check('a', 'anchor', inconclusive)
    assert r.verdict == INCONCLUSIVE
    assert r.certificate == {'obstruction': {'levels': [4, 8]}}
    assert run_check('b', 'anchor', structural).verdict == FAIL
    r = run_check('c', 'anchor', precision, inputs={'precision': 20})
    assert r.verdict == FAIL
    assert 'PrecisionError' in r.message
    assert r.inputs == {'precision': 20}
    assert run_check('d', 'anchor', lambda: make('d', PASS)).elapsed >= 0


def test_run_check_propagates_other_errors():
    def broken():
        raise TypeError("programming error")

    with pytest.raises(TypeError):
        run_check('e', 'anchor', broken)


@pytest.mark.parametrize("verdicts,code", [
    ([PASS, PASS], EXIT_OK),
    ([PASS, INCONCLUSIVE], EXIT_INCONCLUSIVE),
    ([INCONCLUSIVE, FAIL], EXIT_FAIL),
    ([], EXIT_OK),
])
def test_exit_codes(verdicts, code):
    report = VerificationReport({'field': 'mixed 2 1'})
    report.extend([make(f"c{i}", v) for i, v in enumerate(verdicts)])
    assert report.exit_code == code


def test_summary_and_dataframe():
    report = VerificationReport({'field': 'mixed 2 1'})
    report.add(make('tate_integers', PASS, groups={'H^0': 'Z/2'}))
    report.add(make('hilbert90', FAIL, message='H^1 = Z/2'))
    summary = report.get_summary()
    assert summary['total_checks'] == 2
    assert summary['failed'] == 1
    assert summary['by_check'] == {'tate_integers': PASS, 'hilbert90': FAIL}

    df = report.to_dataframe()
    assert list(df['name']) == ['tate_integers', 'hilbert90']
    assert list(df['verdict']) == [PASS, FAIL]


def test_json_roundtrip():
    report = VerificationReport({'field': 'mixed 2 1', 'extension': ['eisenstein [2, -2]']})
    report.add(make('norm_coset', PASS, inputs={'extension': 'Q_2(i)'},
                    groups={'K^x/NL^x': 'Z/2'}, certificate={'levels': (2, 3)}))
    report.add(make('vanishing', INCONCLUSIVE, message='rmax reached'))
    restored = VerificationReport.from_json(report.to_json())
    assert restored.to_dict() == report.to_dict()
    assert restored.checks[0].certificate == {'levels': [2, 3]}


def test_render_text():
    report = VerificationReport({'field': 'mixed 2 1'})
    report.add(make('galois_group', PASS, expected='|G| = 2'))
    text = report.render_text()
    assert 'galois_group' in text
    assert 'passed: 1' in text
