"""
Ramification Groups

Lower numbering from i_G(sigma) = v_L(sigma(pi_L) - pi_L), the Herbrand
functions phi and psi as exact piecewise-linear maps over the rationals,
upper numbering G^v = G_{psi(v)}, and the norm-filtration identities
N(U_L^{psi(m-1)+1}) = U_K^m and U_K^{m-1} / U_K^m N(U_L^{psi(m-1)}) = G^{m-1} / G^m
checked in finite unit-group quotients.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd

from algebra.abgroup import subgroup_quotient
from utils.errors import PrecisionError, UnsupportedInputError
from utils.report import CheckResult

from .extension import (
    Automorphism, Extension, GaloisGroup, base_change, different_valuation, galois_group,
)
from .localfield import LocalFieldElem, unit_group_quotient

logger = logging.getLogger(__name__)

INFINITY = math.inf
Number = Union[int, Fraction]


def i_G(ext: Extension, sigma: Union[int, Automorphism]) -> Union[int, float]:
    """
    v_L(sigma(pi_L) - pi_L); 0 off the inertia group, INFINITY for the identity.

    Raises:
        PrecisionError: sigma != 1 moves pi_L by less than the working precision can see
    """
    gal = galois_group(ext)
    idx = sigma if isinstance(sigma, int) else gal.index(sigma)
    if idx == gal.identity:
        return INFINITY
    aut = gal[idx]
    if aut.leaf_power % ext.f:
        return 0
    pi = ext.top.uniformizer()
    diff = aut(pi) - pi
    if diff.is_zero:
        raise PrecisionError(f"i_G of {aut} exceeds working precision", required=diff.precision + 1)
    return diff.lead


@dataclass
class RamData:
    """
    Lower ramification filtration of a Galois extension.

    ``i_values[s]`` is i_G of the s-th Galois element; ``lower_groups[u]``
    is G_u for u = -1 .. last break + 1 (G_u for larger u is trivial).
    """
    ext: Extension
    group: GaloisGroup
    i_values: Dict[int, Union[int, float]]
    lower_groups: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def inertia_order(self) -> int:
        return len(self.lower_group(0))

    def lower_group(self, u: Number) -> Tuple[int, ...]:
        """G_u = {sigma : i_G(sigma) >= ceil(u) + 1}"""
        k = max(math.ceil(u), -1)
        return tuple(s for s, i in sorted(self.i_values.items()) if i >= k + 1)

    @property
    def breaks_lower(self) -> List[Tuple[int, Tuple[int, ...]]]:
        """Integers u >= -1 with G_u != G_{u+1}, paired with G_u"""
        finite = [i for i in self.i_values.values() if i != INFINITY]
        top = max(finite, default=0)
        out = []
        for u in range(-1, int(top)):
            if len(self.lower_group(u)) != len(self.lower_group(u + 1)):
                out.append((u, self.lower_group(u)))
        return out


def lower_filtration(ext: Extension) -> RamData:
    gal = galois_group(ext)
    values = {s: i_G(ext, s) for s in range(gal.order)}
    data = RamData(ext, gal, values)
    finite = [i for i in values.values() if i != INFINITY]
    data.lower_groups = [data.lower_group(u) for u in range(-1, int(max(finite, default=0)) + 1)]
    logger.info(f"i_G over {ext}: {sorted(values.values())}")
    return data


def herbrand_phi(d: RamData, u: Number) -> Fraction:
    """phi(u) = integral_0^u dt / [G_0 : G_t]"""
    u = Fraction(u)
    if u <= 0:
        return u
    g0 = len(d.lower_group(0))
    total = Fraction(0)
    k = 1
    while k - 1 < u:
        width = min(u, k) - (k - 1)
        total += width * Fraction(len(d.lower_group(k)), g0)
        k += 1
    return total


def herbrand_psi(d: RamData, v: Number) -> Fraction:
    """Inverse of phi"""
    v = Fraction(v)
    if v <= 0:
        return v
    g0 = len(d.lower_group(0))
    reached = Fraction(0)
    k = 1
    while True:
        slope = Fraction(len(d.lower_group(k)), g0)
        if reached + slope >= v:
            return (k - 1) + (v - reached) / slope
        reached += slope
        k += 1


def upper_group(d: RamData, v: Number) -> Tuple[int, ...]:
    """G^v = G_{psi(v)}"""
    return d.lower_group(herbrand_psi(d, v))


def upper_breaks(d: RamData) -> List[Fraction]:
    """phi of the lower breaks u >= 0"""
    return [herbrand_phi(d, u) for u, _ in d.breaks_lower if u >= 0]


def ramification_table(d: RamData) -> pd.DataFrame:
    rows = []
    for u in range(-1, len(d.lower_groups) + 1):
        phi = herbrand_phi(d, u)
        rows.append({
            'u': u,
            'order_G_u': len(d.lower_group(u)),
            'phi_u': str(phi),
            'order_G_upper_phi_u': len(upper_group(d, phi)),
        })
    return pd.DataFrame(rows)


def hasse_arf_holds(d: RamData) -> bool:
    """Upper breaks are integers (expected for abelian extensions)"""
    return all(b.denominator == 1 for b in upper_breaks(d))


def different_check(d: RamData) -> Tuple[int, int]:
    """(sum of i_G over sigma != 1, v_L of the different from the Eisenstein steps)"""
    total = sum(int(i) for i in d.i_values.values() if i != INFINITY)
    return total, different_valuation(d.ext)


# ============================================================================
# NORM FILTRATION
# ============================================================================

def _unit_generators(ext: Extension, j: int) -> List[LocalFieldElem]:
    """Exact generators of U_L^j modulo U_L^(j+1): Teichmuller units at j = 0"""
    L = ext.top
    if j == 0:
        return [L.teichmuller(L.residue.generator)]
    pj = L.uniformizer() ** j
    return [L.teichmuller(L.p ** k) * pj + 1 for k in range(L.residue.m)]


def _level(value: Number) -> int:
    return math.ceil(value)


def _filtration_vectors(uk, j: int) -> List[Tuple[int, ...]]:
    """Presentation vectors of the generators of U_K^j / U_K^level"""
    n = uk.generator_count
    return [tuple(1 if t == i else 0 for t in range(n)) for i in uk.filtration_generators(j)]


def norm_filtration_check(ext: Extension, m: int, r: int = 1,
                          window: Optional[int] = None) -> CheckResult:
    """
    N(U_L^{psi(m-1)+1}) = U_K^m, compared modulo U_K^{m+window} over K_r.

    The norm images of exact generators of U_L^{psi(m-1)+1} / U_L^{psi(m+window-1)+1}
    are classified in U_K / U_K^{m+window}; the defect reported is
    U_K^m / (U_K^{m+window} N(...)).
    """
    if m < 1:
        raise ValueError(f"Filtration level must be >= 1, got {m}")
    if ext.f != 1:
        raise UnsupportedInputError("norm_filtration_check needs a totally ramified extension")
    d = lower_filtration(ext)
    window = ext.e + 1 if window is None else window
    ext_r = base_change(ext, r)
    K = ext_r.base
    top_level = m + window
    uk = unit_group_quotient(K, top_level)

    start = _level(herbrand_psi(d, m - 1)) + 1
    stop = _level(herbrand_psi(d, top_level - 1)) + 1
    images = []
    for j in range(start, stop):
        for g in _unit_generators(ext_r, j):
            images.append(uk.coordinates(ext_r.norm(g).truncate(top_level)))
    target = _filtration_vectors(uk, m)

    amb = uk.group
    contained = all(amb.contains(target, x) for x in images)
    # U_K^m / N(...) as the image of U_K^m in the quotient by the norm images
    defect = subgroup_quotient(amb, images).subgroup(target)
    verdict = 'pass' if contained and defect.is_trivial else 'fail'
    message = (f"N(U_L^{start}) {'=' if verdict == 'pass' else '!='} U_K^{m} "
               f"mod U_K^{top_level}; defect {defect}")
    logger.info(message)
    return CheckResult(
        name='norm_filtration',
        anchor='N(U_L^{psi(m-1)+1}) = U_K^m',
        verdict=verdict,
        inputs={'extension': repr(ext), 'm': m, 'r': r, 'window': window},
        groups={'U_K^m': str(amb.subgroup(target)), 'defect': str(defect)},
        expected=f"trivial defect (U_L level {start})",
        message=message,
        certificate={'contained': contained, 'defect_order': defect.order},
    )


def graded_norm_check(ext: Extension, m: int, r: int = 1) -> CheckResult:
    """
    |U_K^{m-1} / U_K^m N(U_L^{psi(m-1)})| = |G^{m-1} / G^m| over K_r.
    """
    if m < 1:
        raise ValueError(f"Filtration level must be >= 1, got {m}")
    if ext.f != 1:
        raise UnsupportedInputError("graded_norm_check needs a totally ramified extension")
    d = lower_filtration(ext)
    ext_r = base_change(ext, r)
    K = ext_r.base
    uk = unit_group_quotient(K, m)

    start = _level(herbrand_psi(d, m - 1))
    stop = max(start, _level(herbrand_psi(d, m))) + 1
    images = []
    for j in range(start, stop):
        for g in _unit_generators(ext_r, j):
            images.append(uk.coordinates(ext_r.norm(g).truncate(m)))
    if m - 1 >= 1:
        target = _filtration_vectors(uk, m - 1)
        whole = uk.group.subgroup(target).order
    else:
        whole = uk.group.order
    reached = uk.group.subgroup(images).order if images else 1
    index = whole // reached
    expected = len(upper_group(d, m - 1)) // len(upper_group(d, m))
    verdict = 'pass' if index == expected else 'fail'
    message = f"[U_K^{m - 1} : U_K^{m} N(U_L^{start})] = {index}, |G^{m - 1}/G^{m}| = {expected}"
    logger.info(message)
    return CheckResult(
        name='graded_norm',
        anchor='U_K^{m-1} / U_K^m N(U_L^{psi(m-1)}) = G^{m-1} / G^m',
        verdict=verdict,
        inputs={'extension': repr(ext), 'm': m, 'r': r},
        groups={'index': index, 'G^{m-1}/G^m': expected},
        expected=str(expected),
        message=message,
    )
