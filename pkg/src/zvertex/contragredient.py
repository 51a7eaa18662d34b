"""Invariant bilinear pairing, graded dual lattices, and integrality checks.

The pairing is assembled from adjoint rules: Heisenberg modes satisfy
(h(n)u, v) = -(u, h(-n)v), group elements pair across opposite degrees
with a cocycle-determined sign, and (1, 1) = 1. These rules are forced by
the operator-adjoint identity with the square-inversion twist, which the
invariance check below verifies coefficientwise on generators; in
particular the diagonal Heisenberg block at weight one is the negated Gram
matrix.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cocycle import Cocycle, epsilon_exp
from .errors import PreconditionError
from .fock import FockElement, components, coords, heis_act, mono_degree, monomial_basis
from .lattice import Lattice, Vector, inner, neg_vec
from .linalg import inverse, transpose
from .vertexops import vertex_generator
from .zspan import GradedSpan, ZSpanSlice, span_of

__all__ = [
    "group_pair_sign", "pairing", "pairing_block", "dual_span",
    "certify_self_pairing", "invariance_deviations",
]


def group_pair_sign(lat: Lattice, coc: Cocycle, gamma: Sequence) -> Fraction:
    """The value (iota(e_gamma), iota(e_{-gamma})) with (1,1) = 1.

    Equals (-1)^{wt} times the section sign of (gamma, -gamma) when the
    weight is integral; module sectors of fractional weight keep only the
    section sign (the cross-coset normalization is a recorded convention).
    """
    g = tuple(Fraction(x) for x in gamma)
    exp = epsilon_exp(coc, g, neg_vec(g))
    if exp == 0:
        sign = Fraction(1)
    elif 2 * exp == coc.modulus:
        sign = Fraction(-1)
    else:
        raise ValueError("group pairing sign is not +-1 in this sector")
    w = inner(lat, g, g) / 2
    if w.denominator == 1 and int(w) % 2 != 0:
        sign = -sign
    return sign


def _pair_terms(lat: Lattice, coc: Cocycle, mono, gamma, other: FockElement) -> Fraction:
    """((prod of creations) iota_gamma, other) by moving creations across."""
    w = other
    for i, n in mono:
        w = heis_act(lat, lat.base_vector(i), n, w)
        if w.is_zero():
            return Fraction(0)
    base = w.terms.get(((), tuple(neg_vec(gamma))), Fraction(0))
    if base == 0:
        return Fraction(0)
    sign = Fraction(-1) ** len(mono)
    return sign * base * group_pair_sign(lat, coc, gamma)


def pairing(lat: Lattice, coc: Cocycle, u: FockElement, v: FockElement) -> Fraction:
    """Exact bilinear pairing; zero across non-opposite bidegrees."""
    total = Fraction(0)
    for (mono, gamma), cu in u.terms.items():
        deg = mono_degree(mono)
        for (mono2, gamma2), cv in v.terms.items():
            if mono_degree(mono2) != deg:
                continue
            if any(a + b != 0 for a, b in zip(gamma, gamma2)):
                continue
            val = _pair_terms(lat, coc, mono, gamma, FockElement({(mono2, gamma2): Fraction(1)}))
            if val:
                total += cu * cv * val
    return total


def pairing_block(lat: Lattice, coc: Cocycle, gamma: Sequence, weight) -> list[list[Fraction]]:
    """Matrix of the pairing between the (gamma, w) and (-gamma, w) frames."""
    g = tuple(Fraction(x) for x in gamma)
    rows = monomial_basis(lat, g, weight)
    cols = monomial_basis(lat, neg_vec(g), weight)
    out = []
    for mr in rows:
        u = FockElement({(mr, g): Fraction(1)})
        out.append([pairing(lat, coc, u, FockElement({(mc, tuple(neg_vec(g))): Fraction(1)}))
                    for mc in cols])
    return out


def dual_span(lat: Lattice, coc: Cocycle, span: GradedSpan
              ) -> tuple[GradedSpan, list[dict]]:
    """Per bidegree, the dual lattice of the opposite slice under the pairing.

    Returns the graded dual plus a record list of degenerate blocks (rank
    below dimension makes the dual a non-lattice, reported not computed).
    """
    out = GradedSpan()
    problems: list[dict] = []
    for key, _slice in span.items():
        gamma, w = key
        opp_key = (tuple(neg_vec(gamma)), w)
        opp = span.get(opp_key)
        if opp is None:
            problems.append({"key": key, "reason": "missing opposite slice"})
            continue
        dim = len(monomial_basis(lat, gamma, w))
        if opp.rank != dim:
            problems.append({"key": key, "reason": "degenerate block", "rank": opp.rank,
                             "dim": dim})
            continue
        block = pairing_block(lat, coc, gamma, w)
        m = [[sum(Fraction(r[c]) * block[a][c] for c in range(dim)) / opp.denom
              for a in range(dim)] for r in opp.rows]
        try:
            m_inv = inverse(m)
        except ValueError:
            problems.append({"key": key, "reason": "degenerate block"})
            continue
        out.set(key, span_of(transpose(m_inv), dim))
    return out, problems


def certify_self_pairing(lat: Lattice, coc: Cocycle, span: GradedSpan) -> list[dict]:
    """All pairs of basis vectors across opposite slices must pair integrally."""
    records: list[dict] = []
    for key, sl in span.items():
        gamma, w = key
        opp = span.get((tuple(neg_vec(gamma)), w))
        if opp is None:
            records.append({"key": key, "ok": False, "reason": "missing opposite slice"})
            continue
        block = pairing_block(lat, coc, gamma, w)
        witness = None
        for r in sl.fraction_rows():
            for c in opp.fraction_rows():
                val = sum(r[a] * block[a][b] * c[b]
                          for a in range(len(r)) for b in range(len(c)))
                if val.denominator != 1:
                    witness = {"left": r, "right": c, "value": val}
                    break
            if witness:
                break
        records.append({"key": key, "ok": witness is None, "witness": witness})
    return records


def invariance_deviations(lat: Lattice, coc: Cocycle, alpha: Sequence,
                          v: FockElement, w: FockElement, cutoff) -> list[dict]:
    """Coefficientwise deviations of the adjoint identity on a generator.

    Compares (Y_alpha(x) v, w) against (v, (-x^{-2})^{wt} Y_alpha(x^{-1}) w):
    the x^j coefficient of the left side must equal (-1)^{wt} times the
    pairing of v with the x^{-j-2 wt} coefficient of the series on w.
    Exponents are restricted to the window where both truncated series are
    exact. Returns one record per mismatch.
    """
    h = inner(lat, alpha, alpha) / 2
    if h.denominator != 1:
        raise PreconditionError("generator weight must be integral")
    hw = int(h)
    left = vertex_generator(lat, coc, alpha, v, cutoff)
    right = vertex_generator(lat, coc, alpha, w, cutoff)
    sign = Fraction(-1) ** hw
    deviations = []
    exponents = set(left.coefficients) | {-j - 2 * hw for j in right.coefficients}
    for j in sorted(exponents):
        lhs = pairing(lat, coc, left.coefficient(j), w)
        rhs = sign * pairing(lat, coc, v, right.coefficient(-j - 2 * hw))
        if lhs != rhs:
            deviations.append({"exponent": j, "lhs": lhs, "rhs": rhs})
    return deviations
