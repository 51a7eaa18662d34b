"""Conformal structure: the quadratic Virasoro action and span extension.

L(n) is realized as the normal-ordered quadratic sum over a dual pair of
bases of the ambient space. The realization is gated by the bracket
property test (central term c(m^3-m)/12) rather than taken on faith.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import PreconditionError
from .fock import FockElement, components, coords, from_coords, heis_act, monomial_basis
from .lattice import Lattice, dual_base_vector, dual_basis, inner, is_even
from .vertexops import zbasis_elements
from .zspan import GradedSpan, span_of

__all__ = [
    "ConformalData", "conformal_vector", "virasoro_act",
    "central_charge_condition", "minimal_k", "omega_membership",
    "omega_membership_record", "extend_by_k_omega", "lowest_weight_check",
]


@dataclass(frozen=True)
class ConformalData:
    omega: FockElement
    central_charge: Fraction


def conformal_vector(lat: Lattice) -> ConformalData:
    """omega = 1/2 sum_i base_i(-1) dual_i(-1) 1; central charge = rank."""
    vac = FockElement.group(lat.zero())
    acc = FockElement.zero()
    for i in range(lat.rank):
        term = heis_act(lat, lat.base_vector(i), -1,
                        heis_act(lat, dual_base_vector(lat, i), -1, vac))
        acc = acc + term
    return ConformalData(acc.scaled(Fraction(1, 2)), Fraction(lat.rank))


def virasoro_act(lat: Lattice, n: int, v: FockElement) -> FockElement:
    """L(n) v via the normal-ordered quadratic sum over a dual base pair."""
    if v.is_zero():
        return FockElement.zero()
    top = v.max_heis_degree()
    modes: set[int] = {0, n}
    for a in range(1, top + 1):
        modes.add(a)
        modes.add(n - a)
    if n < 0:
        modes.update(range(n + 1, 0))
    acc = FockElement.zero()
    for i in range(lat.rank):
        e_i = lat.base_vector(i)
        d_i = dual_base_vector(lat, i)
        for m in sorted(modes):
            p, q = m, n - m
            if p <= q:
                w = heis_act(lat, e_i, p, heis_act(lat, d_i, q, v))
            else:
                w = heis_act(lat, d_i, q, heis_act(lat, e_i, p, v))
            acc = acc + w
    return acc.scaled(Fraction(1, 2))


def central_charge_condition(k: int, c) -> bool:
    """Whether k^2 c is an even integer."""
    val = Fraction(k) ** 2 * Fraction(c)
    return val.denominator == 1 and val.numerator % 2 == 0


def minimal_k(c) -> int:
    k = 1
    while not central_charge_condition(k, c):
        k += 1
        if k > 1000:
            raise ValueError("no small k with k^2 c even; is c rational?")
    return k


def omega_membership(lat: Lattice) -> bool:
    """Dual-basis criterion: diagonal in 2ZZ and integral off-diagonal.

    Equivalent to self-duality for even non-degenerate lattices.
    """
    if not is_even(lat):
        raise PreconditionError("criterion applies to even lattices")
    c = dual_basis(lat)
    n = lat.rank
    for i in range(n):
        d = c[i][i]
        if d.denominator != 1 or d.numerator % 2 != 0:
            return False
        for j in range(n):
            if i != j and c[i][j].denominator != 1:
                return False
    return True


def omega_membership_record(lat: Lattice) -> dict:
    """Both routes: the dual-basis criterion and direct HNF membership at (0,2)."""
    conf = conformal_vector(lat)
    gamma = lat.zero()
    dim = len(monomial_basis(lat, gamma, 2))
    rows = [coords(lat, el, gamma, 2) for el in zbasis_elements(lat, gamma, 2)]
    slice2 = span_of(rows, dim)
    member = slice2.contains(coords(lat, conf.omega, gamma, 2))
    criterion = omega_membership(lat)
    return {
        "criterion": criterion,
        "hnf_membership": member,
        "agree": criterion == member,
        "central_charge": conf.central_charge,
        "k_min": minimal_k(conf.central_charge),
    }


def _nondecreasing_tuples(total_max: int, smallest: int):
    """All tuples (m_1 <= ... <= m_j), entries >= smallest, sum <= total_max."""
    def rec(lo: int, budget: int):
        yield ()
        for m in range(lo, budget + 1):
            for rest in rec(m, budget - m):
                yield (m,) + rest
    yield from rec(smallest, total_max)


def extend_by_k_omega(lat: Lattice, span: GradedSpan, k: int, conf: ConformalData,
                      cutoff) -> GradedSpan:
    """Enlarge a graded span by all products of k L(-m) operators, m >= 2.

    Gates: k^2 c must be an even integer and k*omega must lie in the
    rational span of the (0, 2) slice. Nondecreasing mode tuples suffice by
    the straightening relations.
    """
    if not central_charge_condition(k, conf.central_charge):
        raise PreconditionError(
            "k^2 c = %s is not an even integer" % (Fraction(k) ** 2 * conf.central_charge))
    cut = Fraction(cutoff)
    key2 = (lat.zero(), Fraction(2))
    slice2 = span.get(key2)
    if slice2 is None:
        raise PreconditionError("span has no (0, 2) slice to compare k*omega against")
    from .linalg import in_row_space
    target = [Fraction(k) * x for x in coords(lat, conf.omega, *key2)]
    if not in_row_space(slice2.fraction_rows(), target):
        raise PreconditionError("k*omega is outside the rational span at (0, 2)")

    out = span.copy()
    for key, sl in span.items():
        gamma, w = key
        budget = int(cut - w) if cut >= w else -1
        if budget < 2:
            continue
        for row in sl.fraction_rows():
            v = from_coords(lat, gamma, w, row)
            for modes in _nondecreasing_tuples(budget, 2):
                if not modes:
                    continue
                img = v
                for m in reversed(modes):
                    img = virasoro_act(lat, -m, img).scaled(k)
                if img.is_zero():
                    continue
                wt = w + sum(modes)
                out.add_vectors((gamma, wt), [coords(lat, img, gamma, wt)],
                                len(monomial_basis(lat, gamma, wt)))
    return out


def lowest_weight_check(lat: Lattice, v: FockElement) -> bool:
    """L(n) v = 0 for every n from 1 up to weight(v) + 1 (homogeneous v)."""
    comps = components(lat, v)
    if len(comps) > 1:
        raise PreconditionError("lowest-weight check requires a homogeneous vector")
    if not comps:
        return True
    (_gamma, w), _ = next(iter(comps.items()))
    top = int(w) + 1 if w >= 0 else 1
    return all(virasoro_act(lat, n, v).is_zero() for n in range(1, top + 1))


def l_minus_two_vacuum(lat: Lattice) -> FockElement:
    """L(-2) applied to the vacuum; equals the conformal vector."""
    return virasoro_act(lat, -2, FockElement.group(lat.zero()))


def divided_l1(lat: Lattice, v: FockElement, n: int) -> FockElement:
    """L(1)^n v / n! computed exactly."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = v
    for _ in range(n):
        out = virasoro_act(lat, 1, out)
    return out.scaled(Fraction(1, factorial(n)))
