"""
Local Class Field Theory Checks

Norm equations in truncated unit groups, the norm-coset group K^x / N L^x,
the reciprocity symbol (geometric Frobenius on the unramified part, the
construction through H^-1(G, U_{L_r}) on the totally ramified
part, assembled from the two for towers) and the report-producing
checks built on them.
"""

import logging
import math
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from algebra.abgroup import FinAbGroup, IntMatrix, iso_check, solve_integer, subgroup_quotient
from cohomology.groups import abelianization
from local_fields.extension import (
    Extension, base_change, base_change_lift, galois_group, inertia_embedding, ramified_restriction,
)
from local_fields.localfield import (
    Enlargement, LocalFieldElem, MultiplicativeQuotient, multiplicative_quotient,
    unit_group_quotient,
)
from local_fields.ramify import (
    graded_norm_check, herbrand_phi, herbrand_psi, lower_filtration, norm_filtration_check,
    upper_breaks,
)
from utils.errors import InconclusiveError, PrecisionError, StructuralError, UnsupportedInputError
from utils.report import FAIL, PASS, CheckResult

from .unit_modules import h_minus_one_stabilized, stabilized_cohomology, stable_levels

logger = logging.getLogger(__name__)

DEFAULT_RMAX = 4


def _require_abelian(ext: Extension):
    group = galois_group(ext).group
    if not group.is_abelian:
        raise StructuralError(f"{group.name} is not abelian")


def _last_upper_break(ext: Extension) -> int:
    return math.ceil(max(upper_breaks(lower_filtration(ext)), default=0))


# ============================================================================
# NORM EQUATIONS
# ============================================================================

@dataclass
class NormSolution:
    """beta with N(beta) = x mod U^level over K_r, or the class obstructing it"""
    r: int
    level: int
    beta: Optional[LocalFieldElem]
    obstruction: Tuple[int, ...] = ()

    @property
    def solved(self) -> bool:
        return self.beta is not None


def norm_equation(ext: Extension, x: LocalFieldElem, r: int = 1, level: int = 2) -> NormSolution:
    """
    Solve N_{L_r/K_r}(beta) = x modulo U_{K_r}^level for a unit x of K.

    The norm is a homomorphism U_L / U_L^{psi(level-1)+1} -> U_K / U_K^level;
    its matrix on exact generators is solved over the integers. When there
    is no solution the class of x in the cokernel is returned.
    """
    if level < 1:
        raise ValueError(f"Norm equation level must be >= 1, got {level}")
    if r > 1 and ext.f != 1:
        raise UnsupportedInputError("Norm equations over K_r need a totally ramified extension")
    ext_r = base_change(ext, r)
    K = ext_r.base
    if r > 1:
        x = Enlargement(ext.base, r).include(x)
    x = K.coerce(x)
    if not x.is_unit():
        raise ValueError(f"{x} is not a unit")

    uk = unit_group_quotient(K, level)
    source = math.ceil(herbrand_psi(lower_filtration(ext), level - 1)) + 1
    ul = unit_group_quotient(ext_r.top, source)
    gens = ul.exact_generators()
    columns = [uk.coordinates(ext_r.norm(g)) for g in gens]
    target = uk.coordinates(x)
    system = IntMatrix.from_columns(columns, uk.generator_count).hstack(uk.group.presentation)
    coeffs = solve_integer(system, target)
    if coeffs is None:
        obstruction = subgroup_quotient(uk.group, columns).classify(target)
        logger.debug(f"No norm from {ext_r.top.name} mod U^{level}: obstruction {obstruction}")
        return NormSolution(r, level, None, obstruction)

    exponent = ul.group.exponent or 1
    beta = ext_r.top.one()
    for g, c in zip(gens, coeffs[:len(gens)]):
        c %= exponent
        if c:
            beta = beta * g ** c
    return NormSolution(r, level, beta)


def vanishing_approx(ext: Extension, u: LocalFieldElem, m: int,
                     rmax: int = DEFAULT_RMAX) -> NormSolution:
    """
    Smallest r <= rmax for which the unit u of K becomes a norm from L_r
    modulo U_{K_r}^m.

    Raises:
        InconclusiveError: no r up to rmax works; the last obstruction class is attached
    """
    if ext.f != 1:
        raise UnsupportedInputError("vanishing_approx needs a totally ramified extension")
    last: Optional[NormSolution] = None
    for r in range(1, rmax + 1):
        last = norm_equation(ext, u, r, m)
        if last.solved:
            logger.info(f"{u} is a norm mod U^{m} after enlarging by r={r}")
            return last
    raise InconclusiveError(
        f"{u} is not a norm mod U^{m} for r <= {rmax}",
        obstruction={'rmax': rmax, 'class': list(last.obstruction) if last else []})


# ============================================================================
# NORM COSETS
# ============================================================================

@dataclass
class NormCosetGroup:
    """
    K^x / N L^x realised as a quotient of K^x / U_K^level, presented on the
    generators of ``ambient``.
    """
    ext: Extension
    level: int
    ambient: MultiplicativeQuotient
    group: FinAbGroup
    certificate: Dict[str, Any] = field(default_factory=dict)

    @property
    def order(self) -> Optional[int]:
        return self.group.order

    def classify(self, x: LocalFieldElem) -> Tuple[int, ...]:
        return self.group.classify(self.ambient.coordinates(self.ext.base.coerce(x)))

    def lift(self, coords: Sequence[int]) -> LocalFieldElem:
        """A full-precision element of K^x in the given class"""
        vec = self.group.element(coords)
        units = self.ambient.units
        exponent = units.group.exponent or 1
        out = self.ambient.field.uniformizer() ** vec[0]
        for g, c in zip(units.exact_generators(), vec[1:]):
            c %= exponent
            if c:
                out = out * g ** c
        return out

    def representatives(self) -> List[Tuple[Tuple[int, ...], LocalFieldElem]]:
        return [(coords, self.lift(coords)) for coords in self.group.elements()]


@lru_cache(maxsize=32)
def _norm_quotient(ext: Extension, level: int) -> Tuple[MultiplicativeQuotient, FinAbGroup]:
    K, L = ext.base, ext.top
    mq = multiplicative_quotient(K, level)
    source = math.ceil(herbrand_psi(lower_filtration(ext), level - 1)) + 1
    gens = [L.uniformizer()] + unit_group_quotient(L, source).exact_generators()
    images = [mq.coordinates(ext.norm(g)) for g in gens]
    return mq, subgroup_quotient(mq.group, images)


@lru_cache(maxsize=32)
def norm_coset_group(ext: Extension) -> NormCosetGroup:
    """
    K^x / N L^x for abelian L/K, computed at the two levels just past the
    largest upper break (where U_K^level lies in the norm group).

    Raises:
        StructuralError: L/K is not abelian
        InconclusiveError: the two levels disagree
    """
    _require_abelian(ext)
    first = _last_upper_break(ext) + 1
    second = first + 1
    _, low = _norm_quotient(ext, first)
    mq, high = _norm_quotient(ext, second)
    if low.invariant_factors != high.invariant_factors:
        raise InconclusiveError(
            f"K^x/NL^x differs between levels {first} and {second}: {low} vs {high}",
            obstruction={'levels': [first, second], 'groups': [str(low), str(high)]})
    logger.info(f"K^x/NL^x for {ext}: {high} (stable at U^{first}, U^{second})")
    return NormCosetGroup(ext, second, mq, high,
                          {'levels': [first, second],
                           'invariant_factors': list(high.invariant_factors)})


# ============================================================================
# RECIPROCITY SYMBOL
# ============================================================================

def artin_symbol(ext: Extension, x: LocalFieldElem, rmax: int = DEFAULT_RMAX) -> int:
    """
    Index in Gal(L/K) of the reciprocity symbol of x in K^x.

    Unramified L/K: Frob^{-v(x)}. Totally ramified L/K: with
    u = x / N(pi_L)^v(x), solve N(beta) = u over K_r, and match the class of
    F(beta) / beta in H^-1(G, U_{L_r}) against the classes of
    sigma(pi_L) / pi_L. Otherwise L = F K_f with F/K totally ramified, and
    the symbol is the element restricting to Frob^{-v(x)} on K_f and to the
    symbol of F/K on F.

    Raises:
        UnsupportedInputError: the Eisenstein steps of L/K are not defined over K
        InconclusiveError: no norm solution for r <= rmax
    """
    _require_abelian(ext)
    gal = galois_group(ext)
    x = ext.base.coerce(x)
    if x.is_zero:
        raise PrecisionError("The symbol of zero is undefined", required=x.precision + 1)
    v = x.lead
    if ext.e == 1:
        want = (-v) % ext.f
        return next(i for i in range(gal.order) if gal.leaf_power(i) == want)
    if ext.f != 1:
        return _composite_symbol(ext, x, rmax)

    u = x / ext.norm(ext.top.uniformizer()) ** v
    d = lower_filtration(ext)
    _, module_level = stable_levels(ext)
    level = math.ceil(herbrand_phi(d, module_level - 1)) + 1
    for r in range(1, rmax + 1):
        sol = norm_equation(ext, u, r, level)
        if not sol.solved:
            continue
        h = h_minus_one_stabilized(ext, r)
        frob = Enlargement(ext.top, r)
        z = frob.frobenius(sol.beta) / sol.beta
        cls = h.tate.classify(h.module.realised_coordinates(z))
        matches = [i for i, c in sorted(h.classes.items()) if c == cls]
        if len(matches) != 1:
            raise StructuralError(f"Class {cls} matches {len(matches)} elements of {gal.group.name}")
        logger.debug(f"symbol({x}) = sigma_{matches[0]} via r={r}")
        return matches[0]
    raise InconclusiveError(f"No norm solution for the unit part of {x} with r <= {rmax}",
                            obstruction={'rmax': rmax, 'level': level})


def _composite_symbol(ext: Extension, x: LocalFieldElem, rmax: int) -> int:
    try:
        sub, restrict = ramified_restriction(ext)
    except StructuralError as exc:
        raise UnsupportedInputError(f"No abelian F/K with {ext.top.name} = F K_f: {exc}") from exc
    gal = galois_group(ext)
    want = ((-x.lead) % ext.f, artin_symbol(sub, x, rmax))
    hits = [i for i in range(gal.order) if (gal.leaf_power(i), restrict[i]) == want]
    if len(hits) != 1:
        raise StructuralError(f"{len(hits)} elements of {gal.group.name} restrict to {want}")
    logger.debug(f"symbol({x}) = sigma_{hits[0]} from frob^{want[0]} and sigma_{want[1]} on F")
    return hits[0]


# ============================================================================
# CHECKS
# ============================================================================

def norm_coset_check(ext: Extension) -> CheckResult:
    """|K^x / N L^x| = [L:K] and K^x / N L^x = G^ab"""
    ncg = norm_coset_group(ext)
    gab, _ = abelianization(galois_group(ext).group)
    ok = ncg.order == ext.degree and iso_check(ncg.group, gab)
    return CheckResult(
        name='norm_coset',
        anchor='K^x / N L^x = Gal(L/K)',
        verdict=PASS if ok else FAIL,
        inputs={'extension': repr(ext)},
        groups={'K^x/NL^x': str(ncg.group), 'G^ab': str(gab)},
        expected=f"{gab} of order {ext.degree}",
        message=f"stable at levels {ncg.certificate['levels']}",
        certificate=ncg.certificate,
    )


def h_minus_one_check(ext: Extension, r: int = 1) -> CheckResult:
    """sigma -> sigma(pi)/pi is a homomorphism onto the stabilized H^-1(G, U_{L_r})"""
    h = h_minus_one_stabilized(ext, r)
    order = h.group.order or 0
    n = galois_group(ext).order
    hom, onto = h.is_homomorphism(), h.is_onto()
    ok = hom and onto and order and n % order == 0
    return CheckResult(
        name='h_minus_one',
        anchor='H^-1(G, U_L) = G^ab',
        verdict=PASS if ok else FAIL,
        inputs={'extension': repr(ext), 'r': r},
        groups={'H^-1': str(h.group), 'classes': {str(k): list(v) for k, v in h.classes.items()}},
        expected=f"order dividing {n}",
        message=f"homomorphism: {hom}, onto: {onto}",
        certificate={'levels': list(h.levels)},
    )


def hilbert90_check(ext: Extension, window: int = 1, r: int = 1) -> CheckResult:
    """
    H^1(G, L_r^x / U^n) stabilizes to 0; the other degrees in the window are
    reported without a verdict.
    """
    h1 = stabilized_cohomology(ext, 1, r, multiplicative=True)
    info: Dict[str, str] = {'H^1': str(h1.group)}
    for i in range(1 - window, 2 + window):
        if i == 1:
            continue
        try:
            info[f'H^{i}'] = str(stabilized_cohomology(ext, i, r, multiplicative=True).group)
        except InconclusiveError as exc:
            logger.warning(f"H^{i} of L^x not stable: {exc}")
            info[f'H^{i}'] = 'inconclusive'
    gab, _ = abelianization(galois_group(ext).group)
    return CheckResult(
        name='hilbert90',
        anchor='H^1(G, L^x) = 0',
        verdict=PASS if h1.group.is_trivial else FAIL,
        inputs={'extension': repr(ext), 'window': window, 'r': r},
        groups=info,
        expected=f"H^1 = 0 (H^0 of order {gab.order} for finite k)",
        message=f"stable at levels {list(h1.levels)}",
        certificate={'levels': list(h1.levels)},
    )


def ramification_reciprocity_check(ext: Extension, m: Optional[int] = None) -> CheckResult:
    """
    [U_K^{m-1} : U_K^m N(U_L^{psi(m-1)})] = |G^{m-1} / G^m| for m up to the
    largest upper break + 1, and N(U_L^{psi(m-1)+1}) = U_K^m for m past it.
    """
    _require_abelian(ext)
    if ext.f != 1:
        raise UnsupportedInputError("ramification_reciprocity_check needs a totally ramified extension")
    top = _last_upper_break(ext) + 1
    levels = [m] if m is not None else list(range(1, top + 1))
    parts: List[CheckResult] = []
    for k in levels:
        parts.append(graded_norm_check(ext, k))
        if k >= top:
            parts.append(norm_filtration_check(ext, k))
    failed = [p for p in parts if not p.passed]
    return CheckResult(
        name='ramification_reciprocity',
        anchor='U_K^{m-1} / U_K^m N(U_L^{psi(m-1)}) = G^{m-1} / G^m',
        verdict=PASS if not failed else FAIL,
        inputs={'extension': repr(ext), 'm': levels},
        groups={f"{p.name} m={p.inputs['m']}": p.groups for p in parts},
        expected='equal orders at every m; trivial defect past the last break',
        message='; '.join(p.message for p in (failed or parts)),
    )


def artin_reciprocity_check(ext: Extension, rmax: int = DEFAULT_RMAX) -> CheckResult:
    """
    On a full set of coset representatives of K^x / N L^x: the symbol is a
    bijection onto G, multiplicative, and trivial on norms.
    """
    gal = galois_group(ext)
    ncg = norm_coset_group(ext)
    reps = ncg.representatives()
    symbols = {coords: artin_symbol(ext, x, rmax) for coords, x in reps}
    failures = []
    if sorted(symbols.values()) != list(range(gal.order)):
        failures.append(f"symbols of coset representatives are {sorted(symbols.values())}")
    for ca, xa in reps:
        for cb, xb in reps:
            got = artin_symbol(ext, xa * xb, rmax)
            if got != gal.group.mul(symbols[ca], symbols[cb]):
                failures.append(f"symbol not multiplicative on classes {ca}, {cb}")
    L = ext.top
    for g in (L.uniformizer(), L.uniformizer() + 1):
        if artin_symbol(ext, ext.norm(g), rmax) != gal.identity:
            failures.append(f"norm of {g} has a nontrivial symbol")
    return CheckResult(
        name='artin_reciprocity',
        anchor='K^x / N L^x -> Gal(L/K) is an isomorphism',
        verdict=PASS if not failures else FAIL,
        inputs={'extension': repr(ext), 'rmax': rmax},
        groups={'symbols': {str(list(k)): v for k, v in symbols.items()}},
        expected=f"bijection onto {gal.group.name}",
        message='; '.join(failures[:5]) or f"{len(reps)} classes map bijectively",
    )


def base_change_check(ext: Extension, r: int, rmax: int = DEFAULT_RMAX) -> CheckResult:
    """
    Symbols along a tower K in E in L, on a full set of coset
    representatives of E^x / N L^x.

    Totally ramified L/K: E = K_r and the symbol of x over L E / E
    restricts on L to the symbol of N_{E/K}(x) over K. L/K with f > 1:
    E = K_f is the maximal unramified subfield (r is ignored) and the symbol
    of x over L/E is the symbol of N_{E/K}(x) over K.
    """
    if ext.f == 1:
        ext_e = base_change(ext, r)
        enlargement = Enlargement(ext.base, r)
        lift = base_change_lift(ext, r)

        def agree(over_e: int, over_k: int) -> bool:
            return lift[over_k] == over_e
    else:
        r = ext.f
        enlargement = ext.enlargement
        ext_e, embed = inertia_embedding(ext)

        def agree(over_e: int, over_k: int) -> bool:
            return embed[over_e] == over_k
    ncg = norm_coset_group(ext_e)
    samples = [x for _, x in ncg.representatives()]
    samples.append(ext_e.norm(ext_e.top.uniformizer() + 1))
    failures = []
    image = set()
    for x in samples:
        over_e = artin_symbol(ext_e, x, rmax)
        over_k = artin_symbol(ext, enlargement.norm(x), rmax)
        image.add(over_e)
        if not agree(over_e, over_k):
            failures.append(f"symbol of x over E is sigma_{over_e}, of N(x) over K is sigma_{over_k}")
    onto = image == set(range(galois_group(ext_e).order))
    if not onto:
        failures.append(f"symbols over E reach only {sorted(image)}")
    return CheckResult(
        name='base_change',
        anchor='restriction of symbols along N_{E/K}',
        verdict=PASS if not failures else FAIL,
        inputs={'extension': repr(ext), 'r': r, 'rmax': rmax},
        groups={'E^x/NL^x': str(ncg.group)},
        expected='agreement on every coset representative',
        message='; '.join(failures[:5]) or f"{len(samples)} samples agree",
    )


def vanishing_check(ext: Extension, units: Sequence[int], m: int,
                    rmax: int = DEFAULT_RMAX) -> CheckResult:
    """Each integer unit u becomes a norm mod U^m after a finite unramified enlargement"""
    found: Dict[str, int] = {}
    failures = []
    for n in units:
        u = ext.base.from_int(n)
        sol = vanishing_approx(ext, u, m, rmax)
        found[str(n)] = sol.r
        ext_r = base_change(ext, sol.r)
        uk = unit_group_quotient(ext_r.base, m)
        lhs = uk.to_group(ext_r.norm(sol.beta))
        rhs = uk.to_group(ext_r.base.coerce(Enlargement(ext.base, sol.r).include(u)))
        if lhs != rhs:
            failures.append(f"N(beta) != {n} mod U^{m} at r={sol.r}")
    return CheckResult(
        name='vanishing',
        anchor='every unit is a norm after unramified base change',
        verdict=PASS if not failures else FAIL,
        inputs={'extension': repr(ext), 'units': list(units), 'm': m, 'rmax': rmax},
        groups={'r': found},
        expected=f"some r <= {rmax} for every unit",
        message='; '.join(failures) or f"enlargements {found}",
    )
