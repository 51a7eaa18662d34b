"""Affine Lie algebra modules at integral level, with divided-power spans.

PBW elements are finite rational combinations of ordered creation
monomials applied to a highest-weight space vector. Mode application
straightens products into the canonical order through the bracket

    [a(m), b(n)] = [a,b](m+n) + m <a,b> delta_{m+n,0} * level,

so every operator action is exact. Divided powers x_alpha(n)^k / k! are
well defined because same-root modes commute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping, Sequence

from .errors import PreconditionError
from .fock import colored_monomials
from .liedata import GModule, LieData, trivial_module
from .linalg import inverse, det, mat_vec, nullspace, rank as qq_rank
from .zspan import ZSpanSlice, span_of

PBWMono = tuple[tuple[int, int], ...]      # ((mode, index), ...) canonical ascending
PBWKey = tuple[PBWMono, int]               # (monomial, highest-weight basis index)

__all__ = [
    "PBWElement", "AffineContext", "vacuum_context", "affine_bracket",
    "act_mode", "verma_basis", "pbw_coords", "pbw_from_coords",
    "divided_power_partitions", "apply_divided_monomial", "apply_divided_power",
    "brute_force_power_coefficient", "garland_span", "pbw_span",
    "contravariant_gram", "QuotientSlice", "quotient_data",
    "affine_conformal_element",
]


class PBWElement:
    """Immutable finite sum over (ordered monomial, module index) keys."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PBWKey, Fraction] | None = None):
        self.terms: dict[PBWKey, Fraction] = {
            k: Fraction(c) for k, c in (terms or {}).items() if c != 0
        }

    @staticmethod
    def zero() -> "PBWElement":
        return PBWElement()

    @staticmethod
    def highest_weight(index: int = 0) -> "PBWElement":
        return PBWElement({((), index): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PBWElement") -> "PBWElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return PBWElement(out)

    def __sub__(self, other: "PBWElement") -> "PBWElement":
        return self + other.scaled(-1)

    def scaled(self, factor) -> "PBWElement":
        f = Fraction(factor)
        if f == 0:
            return PBWElement()
        return PBWElement({k: c * f for k, c in self.terms.items()})

    __rmul__ = scaled

    def __eq__(self, other) -> bool:
        return isinstance(other, PBWElement) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("PBWElement is not hashable")

    def weights(self) -> set[int]:
        return {-sum(m for m, _i in mono) for mono, _u in self.terms}

    def max_weight(self) -> int:
        return max(self.weights(), default=0)

    def __repr__(self) -> str:
        bits = []
        for (mono, u), c in sorted(self.terms.items()):
            ops = "".join("b%d(%d)" % (i, m) for m, i in mono)
            bits.append("%s %s|u%d>" % (c, ops, u))
        return "PBW(%s)" % (" + ".join(bits) if bits else "0")


@dataclass(frozen=True)
class AffineContext:
    """A Lie algebra, an integer level, and the top module it acts on."""

    lie: LieData
    level: int
    module: GModule

    def __post_init__(self) -> None:
        if not isinstance(self.level, int) or isinstance(self.level, bool):
            raise PreconditionError("level must be an integer")


def vacuum_context(lie: LieData, level: int) -> AffineContext:
    return AffineContext(lie, level, trivial_module(lie))


def affine_bracket(g: LieData, a: int, m: int, b: int, n: int):
    """Bracket of a(m) with b(n): (finite part at mode m+n, central coefficient)."""
    finite = g.bracket_table[a][b]
    central = m * g.pairing(a, b) if m + n == 0 else 0
    return finite, central


def act_mode(ctx: AffineContext, a: int, mode: int, v: PBWElement) -> PBWElement:
    """Apply a(mode), straightening into canonical PBW order."""
    out: dict[PBWKey, Fraction] = {}
    for key, c in v.terms.items():
        for k2, c2 in _apply(ctx, a, mode, key).items():
            out[k2] = out.get(k2, Fraction(0)) + c * c2
    return PBWElement(out)


def _apply(ctx: AffineContext, a: int, mode: int, key: PBWKey) -> dict[PBWKey, Fraction]:
    mono, u = key
    g = ctx.lie
    if not mono:
        if mode < 0:
            return {(((mode, a),), u): Fraction(1)}
        if mode > 0:
            return {}
        return {((), i): c for i, c in ctx.module.act(a, u).items()}
    m0, i0 = mono[0]
    rest = mono[1:]
    if mode < 0 and (mode, a) <= (m0, i0):
        return {(((mode, a),) + mono, u): Fraction(1)}
    # a(mode) b(m0) X = b(m0) a(mode) X + [a,b](mode+m0) X + central
    out: dict[PBWKey, Fraction] = {}
    for (mono2, u2), c in _apply(ctx, a, mode, (rest, u)).items():
        for k3, c3 in _apply(ctx, i0, m0, (mono2, u2)).items():
            out[k3] = out.get(k3, Fraction(0)) + c * c3
    for coeff, k in g.bracket_table[a][i0]:
        for k4, c4 in _apply(ctx, k, mode + m0, (rest, u)).items():
            out[k4] = out.get(k4, Fraction(0)) + coeff * c4
    if mode + m0 == 0:
        central = mode * g.pairing(a, i0) * ctx.level
        if central:
            out[(rest, u)] = out.get((rest, u), Fraction(0)) + central
    return {k: c for k, c in out.items() if c != 0}


def verma_basis(g: LieData, module_dim: int, weight: int) -> list[PBWKey]:
    """Canonical (monomial, module index) keys at the given weight."""
    if weight < 0:
        raise ValueError("weight must be non-negative")
    keys = []
    for mono in colored_monomials(weight, g.dim):
        pbw = tuple(sorted((-n, i) for i, n in mono))
        for u in range(module_dim):
            keys.append((pbw, u))
    return sorted(keys)


def pbw_coords(keys: Sequence[PBWKey], v: PBWElement) -> list[Fraction]:
    return [v.terms.get(k, Fraction(0)) for k in keys]


def pbw_from_coords(keys: Sequence[PBWKey], vec: Sequence) -> PBWElement:
    return PBWElement({k: Fraction(c) for k, c in zip(keys, vec)})


# ---------------------------------------------------------------------------
# Divided powers
# ---------------------------------------------------------------------------

def divided_power_partitions(k: int, total: int, lo: int, hi: int
                             ) -> Iterator[tuple[tuple[int, int], ...]]:
    """Partitions of ``total`` into exactly k integer parts within [lo, hi].

    Emitted as ((value, multiplicity), ...) with values strictly
    decreasing; parts may be negative or zero.
    """
    if k == 0:
        if total == 0:
            yield ()
        return
    if lo > hi:
        return

    def rec(parts_left: int, remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if parts_left == 0:
            if remaining == 0:
                yield ()
            return
        top = min(cap, remaining - lo * (parts_left - 1))
        bottom = max(lo, remaining - cap * (parts_left - 1))
        for val in range(top, bottom - 1, -1):
            for tail in rec(parts_left - 1, remaining - val, val):
                yield (val,) + tail

    for flat in rec(k, total, hi):
        grouped: list[tuple[int, int]] = []
        for val in flat:
            if grouped and grouped[-1][0] == val:
                grouped[-1] = (val, grouped[-1][1] + 1)
            else:
                grouped.append((val, 1))
        yield tuple(grouped)


def apply_divided_monomial(ctx: AffineContext, root: int,
                           parts: Sequence[tuple[int, int]], v: PBWElement) -> PBWElement:
    """Apply the product over (value, multiplicity) of root(value)^mult / mult!.

    Same-root modes commute, so the application order is free; annihilating
    values go first to fail fast.
    """
    out = v
    for val, mult in sorted(parts, key=lambda p: -p[0]):
        for _ in range(mult):
            out = act_mode(ctx, root, val, out)
            if out.is_zero():
                return out
        out = out.scaled(Fraction(1, factorial(mult)))
    return out


def _mode_window(v: PBWElement, k: int, total: int) -> tuple[int, int]:
    # a single mode n kills any vector of weight < n, so parts are capped by
    # the maximal weight present; the floor follows from sum = total.
    hi = max(v.max_weight(), 0, total)
    lo = total - (k - 1) * hi if k > 0 else total
    return lo, hi


def apply_divided_power(ctx: AffineContext, root: int, k: int, total: int,
                        v: PBWElement) -> PBWElement:
    """Coefficient operator of the k-th divided generator power applied to v.

    Realized as the sum over partitions of ``total`` into exactly k integer
    parts of the corresponding divided monomials; the mode window keeps the
    sum finite without dropping any term that can act non-trivially.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return v if total == 0 else PBWElement.zero()
    lo, hi = _mode_window(v, k, total)
    acc = PBWElement.zero()
    for parts in divided_power_partitions(k, total, lo, hi):
        acc = acc + apply_divided_monomial(ctx, root, parts, v)
    return acc


def brute_force_power_coefficient(ctx: AffineContext, root: int, k: int, total: int,
                                  v: PBWElement) -> PBWElement:
    """Independent oracle: the k-fold truncated field product divided by k!.

    Sums root(n_1)...root(n_k) v over all ordered integer tuples with
    sum = total inside the same mode window, then divides by k!.
    """
    if k == 0:
        return v if total == 0 else PBWElement.zero()
    lo, hi = _mode_window(v, k, total)
    acc = PBWElement.zero()

    def rec(depth: int, remaining: int, w: PBWElement) -> None:
        nonlocal acc
        if w.is_zero():
            return
        if depth == 1:
            if lo <= remaining <= hi:
                acc = acc + act_mode(ctx, root, remaining, w)
            return
        for n in range(lo, hi + 1):
            rest = remaining - n
            if rest < lo * (depth - 1) or rest > hi * (depth - 1):
                continue
            rec(depth - 1, rest, act_mode(ctx, root, n, w))

    rec(k, total, v)
    return acc.scaled(Fraction(1, factorial(k)))


# ---------------------------------------------------------------------------
# Integral spans and the irreducible quotient
# ---------------------------------------------------------------------------

def pbw_span(ctx: AffineContext, cutoff: int) -> dict[int, ZSpanSlice]:
    """Unit-coefficient span of the ordered monomials, per weight."""
    out: dict[int, ZSpanSlice] = {}
    for w in range(cutoff + 1):
        keys = verma_basis(ctx.lie, ctx.module.dim, w)
        unit = [[Fraction(int(i == j)) for j in range(len(keys))]
                for i in range(len(keys))]
        out[w] = span_of(unit, len(keys))
    return out


def garland_span(ctx: AffineContext, cutoff: int, k_cap: int | None = None
                 ) -> dict[int, ZSpanSlice]:
    """Closure of the top integral form under single divided powers.

    Applies root(n)^k / k! for every root vector, every mode |n| <= cutoff
    and every feasible exponent (optionally capped) to each newly added
    element until all weight slices up to the cutoff stabilize; the result
    is the span of all products of divided powers applied to the top.
    """
    frames = {w: verma_basis(ctx.lie, ctx.module.dim, w) for w in range(cutoff + 1)}
    spans = {w: span_of([], len(frames[w])) for w in range(cutoff + 1)}

    def weight_of(v: PBWElement) -> int:
        ws = v.weights()
        if len(ws) != 1:
            raise ValueError("span generators must be weight homogeneous")
        return next(iter(ws))

    def try_add(v: PBWElement) -> bool:
        w = weight_of(v)
        if w > cutoff:
            return False
        row = pbw_coords(frames[w], v)
        if spans[w].contains(row):
            return False
        spans[w] = spans[w].merged([row])
        return True

    worklist: list[PBWElement] = []
    for u in range(ctx.module.dim):
        top = PBWElement.highest_weight(u)
        try_add(top)
        worklist.append(top)

    while worklist:
        v = worklist.pop()
        w = weight_of(v)
        for root in ctx.lie.roots:
            for n in range(-cutoff, cutoff + 1):
                k = 1
                while True:
                    if k_cap is not None and k > k_cap:
                        break
                    target = w - n * k
                    if n != 0 and not 0 <= target <= cutoff:
                        break
                    img = apply_divided_monomial(ctx, root, ((n, k),), v)
                    if img.is_zero():
                        break
                    if try_add(img):
                        worklist.append(img)
                    k += 1
    return spans


def contravariant_gram(ctx: AffineContext, weight: int) -> list[list[Fraction]]:
    """Exact Gram matrix of the contravariant pairing on one weight slice.

    The adjoint of a(-n) is transpose(a)(n) with the stored transpose
    anti-involution; the top vector is normalized to pairing one.
    """
    if ctx.module.dim != 1:
        raise PreconditionError("contravariant pairing is implemented for the vacuum module")
    keys = verma_basis(ctx.lie, 1, weight)

    def pair_key(key: PBWKey, y: PBWElement) -> Fraction:
        mono, u = key
        if not mono:
            return sum((c for (m2, u2), c in y.terms.items() if not m2 and u2 == u),
                       Fraction(0))
        m, i = mono[0]
        s, it = ctx.lie.transpose[i]
        return Fraction(s) * pair_key((mono[1:], u), act_mode(ctx, it, -m, y))

    columns = [PBWElement({k: Fraction(1)}) for k in keys]
    return [[pair_key(kr, col) for col in columns] for kr in keys]


@dataclass
class QuotientSlice:
    weight: int
    keys: list[PBWKey]
    gram: list[list[Fraction]]
    dim: int
    quotient_dim: int

    def project(self, row: Sequence) -> list[Fraction]:
        """Image of a coordinate vector in the pairing-functional coordinates."""
        return mat_vec(self.gram, [Fraction(x) for x in row])

    def in_radical(self, row: Sequence) -> bool:
        return all(x == 0 for x in self.project(row))

    def image_span(self, rows: Sequence[Sequence]) -> ZSpanSlice:
        return span_of([self.project(r) for r in rows], self.dim)


def quotient_data(ctx: AffineContext, cutoff: int) -> dict[int, QuotientSlice]:
    """Irreducible-quotient slices via the radical of the contravariant form."""
    if ctx.level < 0:
        raise PreconditionError("irreducible quotient requires a non-negative integer level")
    out: dict[int, QuotientSlice] = {}
    for w in range(cutoff + 1):
        keys = verma_basis(ctx.lie, ctx.module.dim, w)
        gram = contravariant_gram(ctx, w)
        out[w] = QuotientSlice(w, keys, gram, len(keys), qq_rank(gram) if keys else 0)
    return out


def affine_conformal_element(ctx: AffineContext) -> PBWElement:
    """Sugawara-normalized quadratic vector 1/(2(level+h)) sum u_i(-1) u'_i(-1) top."""
    g = ctx.lie
    denom = 2 * (ctx.level + g.dual_coxeter)
    if denom == 0:
        raise PreconditionError("level equals the negative dual Coxeter number")
    dual = inverse([list(row) for row in g.form])
    acc = PBWElement.zero()
    for i in range(g.dim):
        for j in range(g.dim):
            c = dual[j][i]
            if c:
                term = act_mode(ctx, i, -1,
                                act_mode(ctx, j, -1, PBWElement.highest_weight()))
                acc = acc + term.scaled(c)
    return acc.scaled(Fraction(1, denom))


def conformal_denominator_bound(ctx: AffineContext) -> int:
    d = abs(int(det(ctx.lie.form)))
    return abs(2 * (ctx.level + ctx.lie.dual_coxeter)) * d
