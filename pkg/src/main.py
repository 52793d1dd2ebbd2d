"""
Local Class Field Theory Verification

Command-line entry point.

    verify <config> [--suite S] [--format json|text] [--precision N] [--rmax R] [--seed INT]
    cohomology <config> [--degree-window W]
    info <config>

Exit status: 0 when no check failed, 1 on failures, 3 when some check was
inconclusive and none failed, 2 on configuration errors.
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd

from algebra.abgroup import iso_check
from algebra.witt import PerfRing
from cohomology.groups import abelianization
from cohomology.tatecoh import GModule, herbrand_quotient, tate_cohomology
from local_fields.extension import Extension, galois_group, tensor_decompose
from local_fields.localfield import LocalField, points_split_check, unit_group_quotient
from local_fields.ramify import (
    INFINITY, different_check, hasse_arf_holds, herbrand_phi, lower_filtration,
    ramification_table, upper_breaks,
)
from reciprocity.lcft import (
    artin_reciprocity_check, base_change_check, h_minus_one_check, hilbert90_check,
    norm_coset_check, ramification_reciprocity_check, vanishing_check,
)
from reciprocity.unit_modules import stable_levels, unit_gmodule
from utils.config import JobSpec, build_tower, load_job
from utils.errors import ConfigError, StructuralError
from utils.report import EXIT_CONFIG, EXIT_OK, FAIL, PASS, CheckResult, VerificationReport, run_check

logger = logging.getLogger(__name__)

Check = Tuple[str, str, Callable[[], CheckResult]]


# ============================================================================
# CHECKS
# ============================================================================

def unit_group_orders_check(ext: Extension, nmax: int) -> CheckResult:
    """|U_L / U_L^n| = (q - 1) q^(n-1)"""
    L = ext.top
    top = min(nmax, L.cap)
    found, failures = {}, []
    for n in range(1, top + 1):
        order = unit_group_quotient(L, n).group.order
        want = (L.q - 1) * L.q ** (n - 1)
        found[f"n={n}"] = order
        if order != want:
            failures.append(f"|U/U^{n}| = {order}, expected {want}")
    return CheckResult(
        name='unit_group_orders',
        anchor='U^n / U^(n+1) = k (n >= 1), U / U^1 = k^x',
        verdict=PASS if not failures else FAIL,
        inputs={'field': L.name, 'nmax': top},
        groups=found,
        expected=f"(q-1) q^(n-1) with q = {L.q}",
        message='; '.join(failures) or f"orders agree for n <= {top}",
    )


def galois_check(ext: Extension) -> CheckResult:
    gal = galois_group(ext)
    ok = gal.order == ext.degree
    return CheckResult(
        name='galois_group',
        anchor='|Gal(L/K)| = [L:K]',
        verdict=PASS if ok else FAIL,
        inputs={'extension': repr(ext)},
        groups={'order': gal.order, 'abelian': gal.group.is_abelian, 'cyclic': gal.group.is_cyclic},
        expected=str(ext.degree),
        message=f"precision of conjugates {gal.precision}",
    )


def tensor_check(ext: Extension) -> CheckResult:
    td = tensor_decompose(ext, ext.f)
    return CheckResult(
        name='tensor_decomposition',
        anchor="O_{K_r} (x) O_L = prod over k' -> k_r",
        verdict=PASS if td.verified else FAIL,
        inputs={'extension': repr(ext), 'r': ext.f},
        groups={'factors': td.factor_count, 'frobenius': list(td.frobenius_permutation)},
        expected=f"{ext.f} factors",
        message='; '.join(td.failures[:5]) or 'idempotents and actions verified',
    )


def filtration_check(ext: Extension) -> CheckResult:
    """Different = sum of i_G, and integral upper breaks for abelian groups"""
    d = lower_filtration(ext)
    total, different = different_check(d)
    abelian = d.group.group.is_abelian
    integral = hasse_arf_holds(d)
    ok = total == different and (integral or not abelian)
    return CheckResult(
        name='ramification_filtration',
        anchor='v_L(D_{L/K}) = sum i_G(sigma); Hasse-Arf',
        verdict=PASS if ok else FAIL,
        inputs={'extension': repr(ext)},
        groups={'i_G': sorted(str(i) for i in d.i_values.values()),
                'upper_breaks': [str(b) for b in upper_breaks(d)]},
        expected=f"different {different}",
        message=f"sum i_G = {total}, different {different}, integral upper breaks: {integral}",
    )


def tate_integers_check(ext: Extension) -> CheckResult:
    """H^-2 = G^ab, H^-1 = 0, H^0 = Z/|G|, H^1 = 0 for Z with trivial action"""
    group = galois_group(ext).group
    m = GModule.integers(group)
    gab, _ = abelianization(group)
    expected = {-2: gab, -1: None, 0: None, 1: None}
    found, failures = {}, []
    for i in sorted(expected):
        h = tate_cohomology(m, i)
        found[f"H^{i}"] = str(h)
        if i == -2:
            ok = iso_check(h, gab)
        elif i == 0:
            ok = h.order == group.order and len(h.invariant_factors) <= 1
        else:
            ok = h.is_trivial
        if not ok:
            failures.append(f"H^{i} = {h}")
    return CheckResult(
        name='tate_integers',
        anchor='H^-2(G, Z) = G^ab',
        verdict=PASS if not failures else FAIL,
        inputs={'group': group.name},
        groups=found,
        expected=f"H^-2 = {gab}, H^0 = Z/{group.order}",
        message='; '.join(failures) or 'low degrees agree',
    )


def herbrand_units_check(ext: Extension) -> CheckResult:
    """h(U_L / U^n) = 1 for the finite unit modules of a cyclic group"""
    _, level = stable_levels(ext)
    module = unit_gmodule(ext, level)
    h = herbrand_quotient(module.gmodule)
    return CheckResult(
        name='herbrand_units',
        anchor='Herbrand quotient of a finite module is 1',
        verdict=PASS if h == 1 else FAIL,
        inputs={'extension': repr(ext), 'level': level},
        groups={'U/U^n': str(module.group), 'h': h},
        expected='1',
        message=f"h = {h}",
    )


def _is_cyclic(ext: Extension) -> bool:
    try:
        return galois_group(ext).group.is_cyclic
    except (ValueError, ArithmeticError) as exc:
        logger.warning(f"No Galois group for {ext}: {exc}")
        return False


def build_checks(job: JobSpec, base: LocalField, ext: Extension) -> List[Check]:
    """Checks of the selected suite, in execution order"""
    suites = ('unit-groups', 'ramification', 'tate', 'lcft') if job.suite == 'all' else (job.suite,)
    checks: List[Check] = []
    totally_ramified = ext.f == 1 and ext.e > 1
    if 'unit-groups' in suites:
        ring = PerfRing.from_degrees(base.p, [base.residue.m, 2 * base.residue.m])
        checks.append(('unit_group_orders', 'unit filtration',
                       lambda: unit_group_orders_check(ext, job.nmax)))
        checks.append(('points_split', 'unit/valuation splitting',
                       lambda: points_split_check(base, ring, seed=job.seed)))
        if ext.f > 1:
            checks.append(('tensor_decomposition', 'tensor splitting', lambda: tensor_check(ext)))
    if 'ramification' in suites:
        checks.append(('galois_group', '|Gal(L/K)| = [L:K]', lambda: galois_check(ext)))
        checks.append(('ramification_filtration', 'different and Hasse-Arf',
                       lambda: filtration_check(ext)))
        if totally_ramified:
            checks.append(('ramification_reciprocity', 'graded norm indices',
                           lambda: ramification_reciprocity_check(ext)))
    if 'tate' in suites:
        checks.append(('tate_integers', 'H^i(G, Z)', lambda: tate_integers_check(ext)))
        if _is_cyclic(ext):
            checks.append(('herbrand_units', 'h(U_L/U^n) = 1', lambda: herbrand_units_check(ext)))
    if 'lcft' in suites:
        r = job.base_change_r if ext.f == 1 else 1
        checks.append(('norm_coset', 'K^x/NL^x = G', lambda: norm_coset_check(ext)))
        checks.append(('h_minus_one', 'H^-1(G, U_L) = G^ab', lambda: h_minus_one_check(ext, r)))
        checks.append(('hilbert90', 'H^1(G, L^x) = 0', lambda: hilbert90_check(ext, 1)))
        checks.append(('artin_reciprocity', 'reciprocity symbol',
                       lambda: artin_reciprocity_check(ext, job.rmax)))
        if totally_ramified:
            checks.append(('vanishing', 'norms after base change',
                           lambda: vanishing_check(ext, job.units, job.m, job.rmax)))
        if ext.degree > 1:
            checks.append(('base_change', 'restriction of symbols',
                           lambda: base_change_check(ext, job.base_change_r, job.rmax)))
    return checks


def run_job(job: JobSpec, base: LocalField, ext: Extension) -> VerificationReport:
    report = VerificationReport(job.describe())
    inputs = {'extension': repr(ext)}
    for name, anchor, check in build_checks(job, base, ext):
        logger.info(f"Running {name}")
        report.add(run_check(name, anchor, check, inputs))
    return report


# ============================================================================
# VERBS
# ============================================================================

def cmd_verify(args) -> int:
    overrides = {'suite': args.suite, 'format': args.format, 'precision': args.precision,
                 'rmax': args.rmax, 'seed': args.seed}
    job = load_job(args.config, overrides)
    base, ext = build_tower(job)
    report = run_job(job, base, ext)
    if job.format == 'json':
        print(report.to_json())
    else:
        report.print_summary(f"Verification Report: {ext.top.name}/{base.name}")
    return report.exit_code


def cohomology_table(ext: Extension, window: int, multiplicative: bool = False) -> pd.DataFrame:
    """H^i of the unit module at the stable level, for |i| <= window"""
    _, level = stable_levels(ext)
    module = unit_gmodule(ext, level, 1, multiplicative)
    rows = []
    for i in range(-window, window + 1):
        h = tate_cohomology(module.gmodule, i, window=window)
        rows.append({'degree': i, 'group': str(h), 'order': h.order})
    return pd.DataFrame(rows, columns=['degree', 'group', 'order'])


def cmd_cohomology(args) -> int:
    job = load_job(args.config, {'precision': args.precision})
    _, ext = build_tower(job)
    units = cohomology_table(ext, args.degree_window)
    mult = cohomology_table(ext, args.degree_window, multiplicative=True)
    if job.format == 'json':
        print(json.dumps({'U_L': units.to_dict(orient='records'),
                          'L^x': mult.to_dict(orient='records')}, indent=2, default=str))
    else:
        print(f"Tate cohomology of U_L/U^n for {ext}")
        print(units.to_string(index=False))
        print(f"\nTate cohomology of L^x/U^n for {ext}")
        print(mult.to_string(index=False))
    return EXIT_OK


def extension_info(ext: Extension) -> Dict:
    info = {'field': ext.top.name, 'base': ext.base.name, 'e': ext.e, 'f': ext.f,
            'degree': ext.degree}
    try:
        d = lower_filtration(ext)
    except StructuralError as exc:
        info['galois'] = False
        info['note'] = str(exc)
        return info
    info['galois'] = True
    info['group'] = d.group.group.name
    info['abelian'] = d.group.group.is_abelian
    info['lower_breaks'] = [u for u, _ in d.breaks_lower]
    info['upper_breaks'] = [str(b) for b in upper_breaks(d)]
    info['herbrand_breakpoints'] = [[u, str(herbrand_phi(d, u))] for u, _ in d.breaks_lower if u >= 0]
    info['i_G'] = ['inf' if i == INFINITY else int(i) for _, i in sorted(d.i_values.items())]
    info['table'] = ramification_table(d).to_dict(orient='records')
    return info


def cmd_info(args) -> int:
    job = load_job(args.config, {'precision': args.precision})
    _, ext = build_tower(job)
    info = extension_info(ext)
    if job.format == 'json':
        print(json.dumps(info, indent=2))
        return EXIT_OK
    print("=" * 70)
    print(f"{info['field']} / {info['base']}")
    print("=" * 70)
    for key in ('e', 'f', 'degree', 'galois', 'group', 'abelian', 'i_G', 'lower_breaks',
                'upper_breaks', 'herbrand_breakpoints', 'note'):
        if key in info:
            print(f"  {key + ':':<22} {info[key]}")
    if 'table' in info:
        print()
        print(pd.DataFrame(info['table']).to_string(index=False))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='lcft', description='Exact verification of local class field theory statements')
    parser.add_argument('--verbose', '-v', action='store_true', help='Log progress at INFO')
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help='Run verification suites on a job file')
    verify.add_argument('config', help='YAML job file')
    verify.add_argument('--suite', choices=['unit-groups', 'ramification', 'tate', 'lcft', 'all'])
    verify.add_argument('--format', choices=['text', 'json'])
    verify.add_argument('--precision', type=int)
    verify.add_argument('--rmax', type=int)
    verify.add_argument('--seed', type=int)
    verify.set_defaults(handler=cmd_verify)

    coh = sub.add_parser('cohomology', help='Tate cohomology of the unit modules')
    coh.add_argument('config', help='YAML job file')
    coh.add_argument('--degree-window', type=int, default=2)
    coh.add_argument('--precision', type=int)
    coh.set_defaults(handler=cmd_cohomology)

    info = sub.add_parser('info', help='Ramification invariants of the extension')
    info.add_argument('config', help='YAML job file')
    info.add_argument('--precision', type=int)
    info.set_defaults(handler=cmd_info)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"Configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
