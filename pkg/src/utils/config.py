"""
Job Configuration

YAML job files with flat explicit keys:

    field: mixed 2 1              # or: equal 4, mixed 2 1 eisenstein [2, -2]
    extension:
      - eisenstein [2, -2]        # or: unram 2, {eisenstein: [2, -2]}
    precision: 20
    rmax: 4
    nmax: 12
    suite: all
    format: text
    seed: 0
    window: 2

``scenario: <name>`` may replace ``field`` and ``extension``. The
environment variable LCFT_PRECISION overrides the default precision;
explicit overrides (command-line flags) take priority over both.
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import sympy
import yaml

from .errors import ConfigError

logger = logging.getLogger(__name__)

PRECISION_ENV = 'LCFT_PRECISION'
DEFAULT_PRECISION = 20
MIN_PRECISION = 4

SUITES = ('unit-groups', 'ramification', 'tate', 'lcft', 'all')
FORMATS = ('text', 'json')
KEYS = ('field', 'extension', 'scenario', 'precision', 'rmax', 'nmax', 'suite', 'format',
        'seed', 'window', 'base_change_r', 'units', 'm')


@dataclass
class JobSpec:
    """A validated verification job"""
    field_spec: str
    extension_spec: List[Any] = field(default_factory=list)
    precision: int = DEFAULT_PRECISION
    rmax: int = 4
    nmax: int = 12
    suite: str = 'all'
    format: str = 'text'
    seed: int = 0
    window: int = 2
    base_change_r: int = 2
    units: List[int] = field(default_factory=lambda: [-1, 3, 5])
    m: int = 4
    scenario: Optional[str] = None

    def describe(self) -> Dict[str, Any]:
        """Job inputs as recorded in reports"""
        return {
            'field': self.field_spec,
            'extension': [str(s) for s in self.extension_spec],
            'scenario': self.scenario,
            'precision': self.precision,
            'rmax': self.rmax,
            'nmax': self.nmax,
            'suite': self.suite,
            'seed': self.seed,
        }


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{PRECISION_ENV} must be an integer, got '{raw}'")


def _key_marks(text: str) -> Dict[str, Tuple[int, int]]:
    """1-based (line, column) of every top-level key"""
    node = yaml.compose(text)
    if not isinstance(node, yaml.MappingNode):
        return {}
    return {k.value: (k.start_mark.line + 1, k.start_mark.column + 1) for k, _ in node.value}


def _error(message: str, key: str, marks: Dict[str, Tuple[int, int]]) -> ConfigError:
    line, column = marks.get(key, (None, None))
    return ConfigError(message, line, column)


# ============================================================================
# GRAMMAR
# ============================================================================

def parse_field_spec(spec: str) -> Tuple[str, int, int, List[Any]]:
    """
    'mixed p m [eisenstein [...]]...' or 'equal q' -> (kind, p, m, layers).

    Raises:
        ValueError: malformed spec
    """
    words = str(spec).split(None, 3)
    if len(words) < 2:
        raise ValueError(f"Field spec '{spec}' needs a kind and a size")
    kind = words[0]
    if kind == 'mixed':
        if len(words) < 3:
            raise ValueError("mixed fields are written 'mixed p m'")
        p, m = int(words[1]), int(words[2])
        rest = words[3] if len(words) > 3 else ''
    elif kind == 'equal':
        q = int(words[1])
        factors = sympy.factorint(q)
        if len(factors) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, m), = factors.items()
        rest = ' '.join(words[2:])
    else:
        raise ValueError(f"Unknown field kind '{kind}' (expected 'mixed' or 'equal')")
    if not sympy.isprime(p) or m < 1:
        raise ValueError(f"Residue field F_{p}^{m} is not valid")

    layers = []
    rest = rest.strip()
    while rest:
        if not rest.startswith('eisenstein'):
            raise ValueError(f"Unexpected text '{rest}' in field spec")
        body = rest[len('eisenstein'):].strip()
        end = _matching_bracket(body)
        layers.append(_coefficients(yaml.safe_load(body[:end + 1])))
        rest = body[end + 1:].strip()
    return kind, p, m, layers


def _matching_bracket(text: str) -> int:
    depth = 0
    for i, ch in enumerate(text):
        if ch == '[':
            depth += 1
        elif ch == ']':
            depth -= 1
            if depth == 0:
                return i
    raise ValueError(f"Unbalanced brackets in '{text}'")


def _coefficients(data: Any) -> List[Any]:
    if not isinstance(data, list) or not data:
        raise ValueError(f"Eisenstein coefficients must be a non-empty list, got {data!r}")
    out = []
    for c in data:
        if isinstance(c, bool):
            raise ValueError(f"Coefficient {c!r} is not an integer or a digit list")
        if isinstance(c, int):
            out.append(c)
        elif isinstance(c, list) and all(isinstance(d, int) and not isinstance(d, bool) for d in c):
            out.append(tuple(c))
        else:
            raise ValueError(f"Coefficient {c!r} is not an integer or a digit list")
    return out


def parse_step(entry: Any) -> Tuple[str, Any]:
    """'unram f' / 'eisenstein [...]' / {kind: data} -> (kind, data)"""
    if isinstance(entry, dict):
        if len(entry) != 1:
            raise ValueError(f"Extension entry {entry} must have exactly one key")
        kind, data = next(iter(entry.items()))
    elif isinstance(entry, str):
        words = entry.split(None, 1)
        if len(words) != 2:
            raise ValueError(f"Extension entry '{entry}' needs a kind and data")
        kind, data = words[0], yaml.safe_load(words[1])
    else:
        raise ValueError(f"Extension entry {entry!r} is not a string or mapping")
    if kind in ('unram', 'unramified'):
        if not isinstance(data, int) or data < 1:
            raise ValueError(f"Unramified degree must be a positive integer, got {data!r}")
        return 'unram', data
    if kind == 'eisenstein':
        return 'eisenstein', _coefficients(data)
    raise ValueError(f"Unknown extension step '{kind}'")


# ============================================================================
# LOADING
# ============================================================================

def _positive(data: Dict[str, Any], key: str, default: int, marks, minimum: int = 1) -> int:
    value = data.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise _error(f"'{key}' must be an integer >= {minimum}, got {value!r}", key, marks)
    return value


def job_from_dict(data: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None,
                  marks: Optional[Dict[str, Tuple[int, int]]] = None) -> JobSpec:
    """
    Validate a job mapping. Overrides with value None are ignored.

    Raises:
        ConfigError: unknown keys, malformed specs or out-of-range values
    """
    from local_fields.scenarios import Scenarios

    marks = marks or {}
    if not isinstance(data, dict):
        raise ConfigError("Job file must be a mapping of keys to values")
    unknown = [k for k in data if k not in KEYS]
    if unknown:
        raise _error(f"Unknown key '{unknown[0]}'. Available: {list(KEYS)}", unknown[0], marks)
    data = dict(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    scenario_precision = None
    if 'scenario' in data:
        try:
            scenario = Scenarios.get_scenario(data['scenario'])
        except KeyError as exc:
            raise _error(str(exc.args[0]), 'scenario', marks)
        data.setdefault('field', scenario.field)
        data.setdefault('extension', scenario.extension)
        data.setdefault('base_change_r', scenario.base_change_r)
        scenario_precision = scenario.precision
    if 'field' not in data:
        raise ConfigError("Job needs a 'field' or a 'scenario'")

    try:
        parse_field_spec(data['field'])
    except (ValueError, yaml.YAMLError) as exc:
        raise _error(f"Bad field spec: {exc}", 'field', marks)
    steps = data.get('extension') or []
    if not isinstance(steps, list):
        raise _error("'extension' must be a list of steps", 'extension', marks)
    try:
        for entry in steps:
            parse_step(entry)
    except (ValueError, yaml.YAMLError) as exc:
        raise _error(f"Bad extension step: {exc}", 'extension', marks)

    fallback = scenario_precision or default_precision()
    precision = _positive(data, 'precision', fallback, marks, minimum=MIN_PRECISION)
    suite = data.get('suite', 'all')
    if suite not in SUITES:
        raise _error(f"Unknown suite '{suite}'. Available: {list(SUITES)}", 'suite', marks)
    fmt = data.get('format', 'text')
    if fmt not in FORMATS:
        raise _error(f"Unknown format '{fmt}'. Available: {list(FORMATS)}", 'format', marks)
    units = data.get('units', [-1, 3, 5])
    if not isinstance(units, list) or not all(isinstance(u, int) and not isinstance(u, bool) for u in units):
        raise _error("'units' must be a list of integers", 'units', marks)

    return JobSpec(
        field_spec=data['field'],
        extension_spec=list(steps),
        precision=precision,
        rmax=_positive(data, 'rmax', 4, marks),
        nmax=_positive(data, 'nmax', 12, marks),
        suite=suite,
        format=fmt,
        seed=_positive(data, 'seed', 0, marks, minimum=0),
        window=_positive(data, 'window', 2, marks),
        base_change_r=_positive(data, 'base_change_r', 2, marks),
        units=units,
        m=_positive(data, 'm', 4, marks),
        scenario=data.get('scenario'),
    )


def load_job(path: str, overrides: Optional[Dict[str, Any]] = None) -> JobSpec:
    """
    Read and validate a YAML job file.

    Raises:
        ConfigError: unreadable file, YAML syntax error (with line and column)
            or validation failure
    """
    try:
        with open(path) as f:
            text = f.read()
    except OSError as exc:
        raise ConfigError(f"Cannot read job file {path}: {exc}")
    try:
        data = yaml.safe_load(text)
        marks = _key_marks(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, 'problem_mark', None)
        if mark is not None:
            raise ConfigError(f"YAML syntax error: {getattr(exc, 'problem', exc)}",
                              mark.line + 1, mark.column + 1)
        raise ConfigError(f"YAML syntax error: {exc}")
    job = job_from_dict(data or {}, overrides, marks)
    logger.info(f"Loaded job from {path}: {job.describe()}")
    return job


def build_tower(job: JobSpec):
    """
    The base field and the extension of a job.

    Raises:
        ConfigError: a polynomial is not Eisenstein or the tower is unsupported
    """
    from algebra.finite_field import GF
    from local_fields.extension import Extension
    from local_fields.localfield import LocalField

    kind, p, m, layers = parse_field_spec(job.field_spec)
    try:
        base = LocalField(kind, GF(p, m), layers, job.precision)
        ext = Extension(base, [parse_step(s) for s in job.extension_spec])
    except ValueError as exc:
        raise ConfigError(f"Invalid tower: {exc}")
    logger.info(f"Built {ext}")
    return base, ext
