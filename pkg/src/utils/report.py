"""
Verification Reports

Per-check results and the report assembled by a verification run, with a
text summary, a pandas view and a JSON form that round-trips.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from .errors import InconclusiveError

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
INCONCLUSIVE = 'inconclusive'
VERDICTS = (PASS, FAIL, INCONCLUSIVE)

# Exit status of a run: inconclusive is flagged apart from failure
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_INCONCLUSIVE = 3


def _jsonable(value: Any) -> Any:
    """Normalise to JSON-native values so reports compare equal after a round trip"""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, float) and value == float('inf'):
        return 'inf'
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if hasattr(value, 'item'):
        return value.item()
    return str(value)


@dataclass
class CheckResult:
    """Outcome of one verification check"""
    name: str
    anchor: str
    verdict: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    groups: Dict[str, Any] = field(default_factory=dict)
    expected: str = ''
    message: str = ''
    provenance: str = 'DERIVED'
    certificate: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"Unknown verdict '{self.verdict}'. Available: {list(VERDICTS)}")
        self.inputs = _jsonable(self.inputs)
        self.groups = _jsonable(self.groups)
        self.certificate = _jsonable(self.certificate)
        self.expected = str(self.expected)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'anchor': self.anchor,
            'verdict': self.verdict,
            'inputs': self.inputs,
            'groups': self.groups,
            'expected': self.expected,
            'message': self.message,
            'provenance': self.provenance,
            'certificate': self.certificate,
            'elapsed': self.elapsed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CheckResult':
        return cls(**data)


def run_check(name: str, anchor: str, check: Callable[[], CheckResult],
              inputs: Optional[Dict[str, Any]] = None) -> CheckResult:
    """
    Run one check, timing it and turning raised errors into verdicts.

    InconclusiveError gives 'inconclusive'; any other library error gives
    'fail' with the message recorded.
    """
    start = time.perf_counter()
    try:
        result = check()
    except InconclusiveError as exc:
        logger.warning(f"{name}: inconclusive ({exc})")
        result = CheckResult(name, anchor, INCONCLUSIVE, inputs or {}, message=str(exc),
                             certificate={'obstruction': exc.obstruction})
    except (ValueError, ArithmeticError, KeyError) as exc:
        logger.warning(f"{name}: failed with {type(exc).__name__}: {exc}")
        result = CheckResult(name, anchor, FAIL, inputs or {},
                             message=f"{type(exc).__name__}: {exc}")
    result.elapsed = round(time.perf_counter() - start, 6)
    return result


@dataclass
class VerificationReport:
    """All checks of one job, in execution order"""
    job: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)

    def __post_init__(self):
        self.job = _jsonable(self.job)

    def add(self, result: CheckResult):
        self.checks.append(result)

    def extend(self, results: List[CheckResult]):
        self.checks.extend(results)

    # ========================================================================
    # AGGREGATES
    # ========================================================================

    def count(self, verdict: str) -> int:
        return sum(1 for c in self.checks if c.verdict == verdict)

    @property
    def total_elapsed(self) -> float:
        return sum(c.elapsed for c in self.checks)

    @property
    def exit_code(self) -> int:
        """0 iff nothing failed; inconclusive runs get their own status"""
        if self.count(FAIL):
            return EXIT_FAIL
        if self.count(INCONCLUSIVE):
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    def get_summary(self) -> Dict:
        """
        Get a summary of the run.

        Returns:
            Dictionary with verdict counts and per-check verdicts
        """
        return {
            'job': self.job,
            'total_checks': len(self.checks),
            'passed': self.count(PASS),
            'failed': self.count(FAIL),
            'inconclusive': self.count(INCONCLUSIVE),
            'total_elapsed': self.total_elapsed,
            'exit_code': self.exit_code,
            'by_check': {c.name: c.verdict for c in self.checks},
        }

    def to_dataframe(self) -> pd.DataFrame:
        """One row per check"""
        data = []
        for c in self.checks:
            data.append({
                'name': c.name,
                'verdict': c.verdict,
                'anchor': c.anchor,
                'expected': c.expected,
                'groups': json.dumps(c.groups, sort_keys=True),
                'provenance': c.provenance,
                'elapsed': c.elapsed,
            })
        return pd.DataFrame(data, columns=['name', 'verdict', 'anchor', 'expected', 'groups',
                                           'provenance', 'elapsed'])

    # ========================================================================
    # SERIALIZATION
    # ========================================================================

    def to_dict(self) -> Dict[str, Any]:
        return {'job': self.job, 'checks': [c.to_dict() for c in self.checks]}

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'VerificationReport':
        return cls(data.get('job', {}), [CheckResult.from_dict(c) for c in data.get('checks', [])])

    @classmethod
    def from_json(cls, text: str) -> 'VerificationReport':
        return cls.from_dict(json.loads(text))

    def render_text(self, title: str = "Verification Report") -> str:
        lines = ["=" * 70, title, "=" * 70]
        for key, value in self.job.items():
            lines.append(f"  {key + ':':<22} {value}")
        lines.append("")
        for c in self.checks:
            mark = {PASS: '✓', FAIL: '✗', INCONCLUSIVE: '?'}[c.verdict]
            lines.append(f"{mark} {c.name:<28} {c.verdict:<13} ({c.elapsed:.2f}s)")
            lines.append(f"    anchor:   {c.anchor}")
            if c.groups:
                lines.append(f"    groups:   {json.dumps(c.groups, sort_keys=True)}")
            if c.expected:
                lines.append(f"    expected: {c.expected} [{c.provenance}]")
            if c.message:
                lines.append(f"    {c.message}")
        summary = self.get_summary()
        lines.append("")
        lines.append(f"Checks: {summary['total_checks']}  passed: {summary['passed']}  "
                     f"failed: {summary['failed']}  inconclusive: {summary['inconclusive']}")
        return "\n".join(lines)

    def print_summary(self, title: str = "Verification Report"):
        """Print a formatted summary of the run"""
        print(self.render_text(title))
