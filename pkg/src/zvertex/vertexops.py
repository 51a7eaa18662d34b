"""Vertex operators attached to lattice group elements.

Everything is built from the two exponential half-series

    Eminus(alpha, x) = exp( sum_{n>0} alpha(-n)/n x^n )
    Eplus(alpha, x)  = exp( -sum_{n>0} alpha(n)/n x^-n )

applied to finite Fock elements, plus the group shift and cocycle sign.
Series carry an explicit weight cutoff: every emitted coefficient is
exact, everything of higher weight is absent rather than approximated.
Multi-variable products are emitted at each multi-exponent whose every
suffix weight stays within the cutoff; at those exponents the iterated
evaluation agrees exactly with the normal-ordered form times the binomial
expansion of the pairwise (x_i - x_j) factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .cocycle import Cocycle, epsilon_sign
from .fock import (
    FockElement, HeisPoly, Mono, colored_monomials, components, coords,
    heis_act, heis_budget, heis_multiply, mono_mul, monomial_basis, poly_mul,
    term_weight,
)
from .lattice import Lattice, Vector, add_vec, inner, min_sector_weight, neg_vec
from .zspan import GradedSpan, span_of
from .errors import PreconditionError

__all__ = [
    "OperatorSeries", "e_minus_series", "e_plus_series", "vertex_generator",
    "multi_product", "normal_ordered_coefficient", "zbasis_elements",
    "spanning_elements", "sector_vectors", "sector_weights", "ybasis_span",
    "spanning_span", "closure_records",
]


@dataclass
class OperatorSeries:
    """Finite window of series coefficients: exponent -> Fock element."""

    coefficients: dict[int, FockElement]
    cutoff: Fraction

    def coefficient(self, exponent: int) -> FockElement:
        return self.coefficients.get(exponent, FockElement.zero())


# ---------------------------------------------------------------------------
# Exponential half-series
# ---------------------------------------------------------------------------

_EMINUS_CACHE: dict[tuple, list[HeisPoly]] = {}


def e_minus_coefficients(lat: Lattice, alpha: Sequence, degree: int) -> list[HeisPoly]:
    """Coefficients of exp(sum_n alpha(-n)/n x^n) as creation polynomials.

    Index j of the result is the x^j coefficient, computed through the
    derivative recursion j*c_j = sum_m alpha(-m) c_{j-m} (all creation
    operators commute, so the recursion is exact).
    """
    key = (lat, tuple(Fraction(a) for a in alpha))
    cache = _EMINUS_CACHE.setdefault(key, [{(): Fraction(1)}])
    avec = [Fraction(a) for a in alpha]
    while len(cache) <= degree:
        j = len(cache)
        acc: HeisPoly = {}
        for m in range(1, j + 1):
            for mono, c in cache[j - m].items():
                for i, ai in enumerate(avec):
                    if ai:
                        k = mono_mul(mono, ((i, m),))
                        acc[k] = acc.get(k, Fraction(0)) + c * ai
        cache.append({k: c / j for k, c in acc.items() if c != 0})
    return cache[: degree + 1]


def e_minus_series(lat: Lattice, alpha: Sequence, v: FockElement, cutoff) -> OperatorSeries:
    """Truncated expansion of Eminus(alpha, x) v; x^j raises weight by j."""
    cut = Fraction(cutoff)
    out: dict[int, FockElement] = {}
    for (_gamma, w), piece in components(lat, v).items():
        top = cut - w
        if top < 0:
            continue
        polys = e_minus_coefficients(lat, alpha, int(top))
        for j, poly in enumerate(polys):
            if poly:
                img = heis_multiply(poly, piece)
                if not img.is_zero():
                    out[j] = out.get(j, FockElement.zero()) + img
    return OperatorSeries({j: w for j, w in out.items() if not w.is_zero()}, cut)


def e_plus_series(lat: Lattice, alpha: Sequence, v: FockElement, cutoff=None) -> OperatorSeries:
    """Expansion of Eplus(alpha, x) v: exact and finite, x^-m lowers weight by m.

    Recursion m*s_m = -sum_{m'} alpha(m') s_{m-m'} over the annihilation
    half; stops once the creation degree of v is exhausted.
    """
    avec = [Fraction(a) for a in alpha]
    top = v.max_heis_degree()
    series: list[FockElement] = [v]
    for m in range(1, top + 1):
        acc = FockElement.zero()
        for mprime in range(1, m + 1):
            acc = acc + heis_act(lat, avec, mprime, series[m - mprime])
        series.append(acc.scaled(Fraction(-1, m)))
    out = {-m: s for m, s in enumerate(series) if not s.is_zero()}
    return OperatorSeries(out, Fraction(cutoff) if cutoff is not None else Fraction(top))


# ---------------------------------------------------------------------------
# Generator vertex operators
# ---------------------------------------------------------------------------

def _require_lattice_vector(alpha: Sequence) -> Vector:
    a = tuple(Fraction(x) for x in alpha)
    if any(x.denominator != 1 for x in a):
        raise PreconditionError("vertex generators require an integral lattice vector")
    return a


def vertex_generator(lat: Lattice, coc: Cocycle, alpha: Sequence, v: FockElement,
                     cutoff) -> OperatorSeries:
    """Series of the generator attached to e_alpha applied to v.

    Composition order: group-degree power shift, signed group translation,
    annihilation half, creation half. Every emitted coefficient is doubly
    homogeneous once v is, with group degree shifted by alpha.
    """
    alpha = _require_lattice_vector(alpha)
    cut = Fraction(cutoff)
    out: dict[int, FockElement] = {}
    by_gamma: dict[tuple, dict] = {}
    for (mono, gamma), c in v.terms.items():
        by_gamma.setdefault(gamma, {})[(mono, gamma)] = c
    for gamma, terms in sorted(by_gamma.items()):
        pairing = inner(lat, alpha, gamma)
        if pairing.denominator != 1:
            raise PreconditionError("group degree does not pair integrally with alpha")
        shift = int(pairing)
        sign = epsilon_sign(coc, alpha, gamma)
        moved_gamma = add_vec(alpha, gamma)
        moved = FockElement({(mono, moved_gamma): c * sign
                             for (mono, _g), c in terms.items()})
        plus = e_plus_series(lat, alpha, moved)
        for jp, w1 in plus.coefficients.items():
            minus = e_minus_series(lat, alpha, w1, cut)
            for jm, w2 in minus.coefficients.items():
                key = shift + jp + jm
                out[key] = out.get(key, FockElement.zero()) + w2
    return OperatorSeries({j: w for j, w in out.items() if not w.is_zero()}, cut)


def multi_product(lat: Lattice, coc: Cocycle, alphas: Sequence[Sequence],
                  target: FockElement, cutoff) -> dict[tuple[int, ...], FockElement]:
    """Coefficients of the iterated generator product applied to target.

    Keys are multi-exponents (m_1, ..., m_k), rightmost operator applied
    first; emitted exactly when every suffix weight is within the cutoff.
    """
    acc: dict[tuple[int, ...], FockElement] = {(): target}
    for alpha in reversed(list(alphas)):
        nxt: dict[tuple[int, ...], FockElement] = {}
        for exps, w in acc.items():
            series = vertex_generator(lat, coc, alpha, w, cutoff)
            for j, cw in series.coefficients.items():
                nxt[(j,) + exps] = cw
        acc = nxt
    return {e: w for e, w in acc.items() if not w.is_zero()}


# ---------------------------------------------------------------------------
# Normal-ordered evaluation path
# ---------------------------------------------------------------------------

def general_binomial(n: int, s: int) -> int:
    """Binomial coefficient C(n, s) for any integer n and s >= 0."""
    if s < 0:
        return 0
    if n >= 0:
        return comb(n, s) if s <= n else 0
    return (-1) ** s * comb(s - n - 1, s)


def pair_power_coefficient(exponents: dict[tuple[int, int], int],
                           e: Sequence[int], k: int) -> int:
    """Coefficient of x^e in prod_{i<j} (x_i - x_j)^{exponents[i,j]}.

    Each factor is expanded in non-negative powers of the later variable,
    matching iterated operator composition. Finite by descending recursion
    over the last variable's budget.
    """
    memo: dict[tuple, int] = {}

    def rec(j: int, rem: tuple[int, ...]) -> int:
        if j == 0:
            return 1 if rem[0] == 0 else 0
        key = (j, rem)
        if key in memo:
            return memo[key]
        target = rem[j]
        total = 0
        if target >= 0:
            firsts = [exponents.get((i, j), 0) for i in range(j)]

            def distribute(i: int, left: int, factor: int,
                           adjust: tuple[int, ...]) -> None:
                nonlocal total
                if i == j:
                    if left == 0:
                        total += factor * rec(j - 1, adjust)
                    return
                n = firsts[i]
                s_max = left if n < 0 else min(left, n)
                for s in range(0, s_max + 1):
                    c = general_binomial(n, s) * (-1) ** s
                    if c == 0:
                        continue
                    new_adjust = list(adjust)
                    new_adjust[i] -= n - s
                    distribute(i + 1, left - s, factor * c, tuple(new_adjust))

            distribute(0, target, 1, rem)
        memo[key] = total
        return total

    return rec(k - 1, tuple(e))


def normal_ordered_coefficient(lat: Lattice, coc: Cocycle, alphas: Sequence[Sequence],
                               beta: Sequence, exps: Sequence[int]) -> FockElement:
    """Exact product coefficient at one multi-exponent via the factored form.

    The product equals the commuting creation-exponential part times the
    integer binomial expansion of the pairwise factors, with the group
    power shifts and the accumulated section signs.
    """
    alphas = [_require_lattice_vector(a) for a in alphas]
    beta_v = tuple(Fraction(x) for x in beta)
    k = len(alphas)
    if k == 0:
        raise ValueError("need at least one generator")
    gamma_out = beta_v
    for a in alphas:
        gamma_out = add_vec(gamma_out, a)
    sign = 1
    tail = beta_v
    for a in reversed(alphas):
        sign *= epsilon_sign(coc, a, tail)
        tail = add_vec(a, tail)
    shifts = [int(inner(lat, a, beta_v)) for a in alphas]
    nij = {(i, j): int(inner(lat, alphas[i], alphas[j]))
           for i in range(k) for j in range(i + 1, k)}
    total_pairs = sum(nij.values())
    budget = sum(exps) - sum(shifts) - total_pairs
    if budget < 0:
        return FockElement.zero()
    polys = [e_minus_coefficients(lat, a, budget) for a in alphas]

    out = FockElement.zero()

    def enumerate_b(i: int, left: int, chosen: list[int]) -> None:
        nonlocal out
        if i == k:
            if left != 0:
                return
            e = [exps[t] - shifts[t] - chosen[t] for t in range(k)]
            c = pair_power_coefficient(nij, e, k)
            if c == 0:
                return
            poly: HeisPoly = {(): Fraction(1)}
            for t in range(k):
                if chosen[t]:
                    poly = poly_mul(poly, polys[t][chosen[t]])
            if poly:
                out = out + heis_multiply(poly, FockElement.group(gamma_out)).scaled(c)
            return
        for b in range(0, left + 1):
            enumerate_b(i + 1, left - b, chosen + [b])

    enumerate_b(0, budget, [])
    return out.scaled(sign)


# ---------------------------------------------------------------------------
# Spanning sets and the monomial ZZ-basis
# ---------------------------------------------------------------------------

def _base_coefficient_polys(lat: Lattice, symbol: int, degree: int) -> list[HeisPoly]:
    """Creation-polynomial coefficients for the +-base exponentials.

    Symbols 0..rank-1 name the base vectors, rank..2*rank-1 their negatives.
    """
    if symbol < lat.rank:
        alpha: Sequence = lat.base_vector(symbol)
    else:
        alpha = neg_vec(lat.base_vector(symbol - lat.rank))
    return e_minus_coefficients(lat, alpha, degree)


def _product_of_factors(lat: Lattice, factors: Mono, colors_are_signed: bool,
                        gamma: Vector) -> FockElement:
    poly: HeisPoly = {(): Fraction(1)}
    for symbol, degree in factors:
        table = _base_coefficient_polys(lat, symbol, degree) if colors_are_signed \
            else e_minus_coefficients(lat, lat.base_vector(symbol), degree)
        poly = poly_mul(poly, table[degree])
    return heis_multiply(poly, FockElement.group(gamma))


def zbasis_elements(lat: Lattice, gamma: Sequence, weight) -> list[FockElement]:
    """Monomial ZZ-basis of the integral form at one bidegree.

    Entry (i, j) of a factor multiset denotes the x^j coefficient of the
    base-vector exponential Eminus(base_i, x) applied to 1; the element is
    the product of those coefficients on the group element of degree gamma.
    Count equals the slice dimension.
    """
    g = tuple(Fraction(x) for x in gamma)
    n = heis_budget(lat, g, Fraction(weight))
    if n is None:
        return []
    return [_product_of_factors(lat, mono, False, g)
            for mono in colored_monomials(n, lat.rank)]


def spanning_elements(lat: Lattice, gamma: Sequence, weight) -> list[FockElement]:
    """Generator-product spanning family at one bidegree.

    These are exactly the distinct coefficients of normal-ordered products
    of generator operators over the +-base vectors landing in the slice
    (global signs dropped: they do not change the ZZ-span).
    """
    g = tuple(Fraction(x) for x in gamma)
    n = heis_budget(lat, g, Fraction(weight))
    if n is None:
        return []
    return [_product_of_factors(lat, mono, True, g)
            for mono in colored_monomials(n, 2 * lat.rank)]


def associative_product(lat: Lattice, coc: Cocycle, u: FockElement,
                        v: FockElement) -> FockElement:
    """Product in the underlying associative algebra.

    Creation parts multiply in the symmetric algebra and group elements
    multiply through the section: e_a e_b = sign(a,b) e_{a+b}. Requires
    every involved sign to be +-1.
    """
    out: dict = {}
    for (ma, ga), ca in u.terms.items():
        for (mb, gb), cb in v.terms.items():
            sign = epsilon_sign(coc, ga, gb)
            key = (mono_mul(ma, mb), add_vec(ga, gb))
            out[key] = out.get(key, Fraction(0)) + ca * cb * sign
    return FockElement(out)


# ---------------------------------------------------------------------------
# Sector windows and graded spans
# ---------------------------------------------------------------------------

def _coordinate_box(rank: int, radius: int):
    if rank == 0:
        yield ()
        return
    for first in range(-radius, radius + 1):
        for rest in _coordinate_box(rank - 1, radius):
            yield (first,) + rest


def _is_positive_definite(lat: Lattice) -> bool:
    from .linalg import det
    g = [list(row) for row in lat.gram]
    return all(det([row[: k + 1] for row in g[: k + 1]]) > 0
               for k in range(lat.rank))


def _inferred_window(lat: Lattice, base: Vector, cutoff: Fraction) -> int:
    """Coordinate radius guaranteed to cover every sector of weight <= cutoff.

    Uses the bound v^T G v >= |v|_inf^2 / rho with rho = max absolute row
    sum of the inverse Gram (spectral radius bound), valid for positive
    definite G.
    """
    from .linalg import inverse
    inv = inverse(lat.gram)
    rho = max(sum(abs(x) for x in row) for row in inv)
    b = max((abs(x) for x in base), default=Fraction(0))
    t = 0
    while t * t <= 2 * max(cutoff, 0) * rho:
        t += 1
    return int(b.__ceil__()) + t


def sector_vectors(lat: Lattice, beta: Sequence | None, cutoff, window: int | None) -> list[Vector]:
    """Group degrees beta + (lattice point) whose minimum weight is within reach.

    ``window`` bounds the absolute value of the lattice coordinates; it is
    mandatory for indefinite lattices (there are infinitely many sectors at
    bounded weight otherwise) and inferred from the cutoff for positive
    definite ones.
    """
    cut = Fraction(cutoff)
    base = tuple(Fraction(x) for x in beta) if beta is not None else lat.zero()
    if window is None:
        if not _is_positive_definite(lat):
            raise PreconditionError(
                "sector window required: lattice is not positive definite")
        window = _inferred_window(lat, base, cut)
    sectors = []
    for m in _coordinate_box(lat.rank, window):
        gamma = add_vec(base, tuple(map(Fraction, m)))
        if min_sector_weight(lat, gamma) <= cut:
            sectors.append(gamma)
    return sorted(sectors)


def sector_weights(lat: Lattice, gamma: Vector, cutoff) -> list[Fraction]:
    low = min_sector_weight(lat, gamma)
    cut = Fraction(cutoff)
    steps = int(cut - low)
    return [low + j for j in range(steps + 1)]


def ybasis_span(lat: Lattice, beta: Sequence | None, cutoff, window: int | None = None) -> GradedSpan:
    span = GradedSpan()
    for gamma in sector_vectors(lat, beta, cutoff, window):
        for w in sector_weights(lat, gamma, cutoff):
            dim = len(monomial_basis(lat, gamma, w))
            rows = [coords(lat, el, gamma, w) for el in zbasis_elements(lat, gamma, w)]
            span.set((gamma, w), span_of(rows, dim))
    return span


def spanning_span(lat: Lattice, beta: Sequence | None, cutoff, window: int | None = None) -> GradedSpan:
    span = GradedSpan()
    for gamma in sector_vectors(lat, beta, cutoff, window):
        for w in sector_weights(lat, gamma, cutoff):
            dim = len(monomial_basis(lat, gamma, w))
            rows = [coords(lat, el, gamma, w) for el in spanning_elements(lat, gamma, w)]
            span.set((gamma, w), span_of(rows, dim))
    return span


def closure_records(lat: Lattice, beta: Sequence | None, cutoff,
                    window: int | None = None) -> list[dict]:
    """Per-bidegree certification of the integral form within a window.

    For each slice: dimension, both ranks, span equality, and membership of
    every spanning coefficient in the monomial-basis span (with a witness
    on failure).
    """
    records: list[dict] = []
    for gamma in sector_vectors(lat, beta, cutoff, window):
        for w in sector_weights(lat, gamma, cutoff):
            basis = monomial_basis(lat, gamma, w)
            dim = len(basis)
            y_rows = [coords(lat, el, gamma, w) for el in zbasis_elements(lat, gamma, w)]
            s_rows = [coords(lat, el, gamma, w) for el in spanning_elements(lat, gamma, w)]
            y_slice = span_of(y_rows, dim)
            s_slice = span_of(s_rows, dim)
            failures = [row for row in s_rows if not y_slice.contains(row)]
            records.append({
                "gamma": gamma,
                "weight": w,
                "dim": dim,
                "rank_basis": y_slice.rank,
                "rank_products": s_slice.rank,
                "spans_equal": y_slice == s_slice,
                "membership_failures": len(failures),
                "witness": failures[0] if failures else None,
                "ok": (y_slice.rank == dim and y_slice == s_slice and not failures),
            })
    return records
