"""Doubly graded Fock spaces with exact rational coefficients.

Elements are finite sums of (creation monomial, group degree) pairs. A
monomial is a multiset of (base index, mode) factors standing for the
product of the creation operators base_i(-mode); the group degree is a
dual-lattice vector in base coordinates. The weight of a term is the sum
of its modes plus half the norm of its group degree, which is rational in
module sectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .lattice import Lattice, Vector, add_vec, inner

Mono = tuple[tuple[int, int], ...]          # ((index, mode), ...) sorted; mode >= 1
Gamma = tuple[Fraction, ...]
TermKey = tuple[Mono, Gamma]
Bidegree = tuple[Gamma, Fraction]           # (group degree, weight)
HeisPoly = dict[Mono, Fraction]             # polynomial in creation operators


def mono_degree(mono: Mono) -> int:
    return sum(n for _i, n in mono)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(sorted(a + b))


class FockElement:
    """Immutable finite sum of homogeneous terms; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[TermKey, Fraction] | None = None):
        self.terms: dict[TermKey, Fraction] = {
            k: Fraction(c) for k, c in (terms or {}).items() if c != 0
        }

    @staticmethod
    def zero() -> "FockElement":
        return FockElement()

    @staticmethod
    def group(gamma: Sequence) -> "FockElement":
        """The bare group-algebra element of degree gamma."""
        key = ((), tuple(Fraction(x) for x in gamma))
        return FockElement({key: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FockElement") -> "FockElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return FockElement(out)

    def __sub__(self, other: "FockElement") -> "FockElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) - c
        return FockElement(out)

    def __neg__(self) -> "FockElement":
        return FockElement({k: -c for k, c in self.terms.items()})

    def scaled(self, factor) -> "FockElement":
        f = Fraction(factor)
        if f == 0:
            return FockElement()
        return FockElement({k: c * f for k, c in self.terms.items()})

    __rmul__ = scaled
    __mul__ = scaled

    def __eq__(self, other) -> bool:
        return isinstance(other, FockElement) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("FockElement is not hashable")

    def items(self) -> Iterator[tuple[TermKey, Fraction]]:
        return iter(self.terms.items())

    def max_heis_degree(self) -> int:
        return max((mono_degree(m) for m, _g in self.terms), default=0)

    def gammas(self) -> set[Gamma]:
        return {g for _m, g in self.terms}

    def __repr__(self) -> str:
        return "FockElement(%s)" % render(self)


def term_weight(lat: Lattice, key: TermKey) -> Fraction:
    mono, gamma = key
    return mono_degree(mono) + inner(lat, gamma, gamma) / 2


def components(lat: Lattice, v: FockElement) -> dict[Bidegree, FockElement]:
    """Split into doubly homogeneous pieces keyed by (gamma, weight)."""
    out: dict[Bidegree, dict[TermKey, Fraction]] = {}
    for key, c in v.terms.items():
        d = (key[1], term_weight(lat, key))
        out.setdefault(d, {})[key] = c
    return {d: FockElement(t) for d, t in sorted(out.items())}


def is_homogeneous(lat: Lattice, v: FockElement) -> bool:
    return len(components(lat, v)) <= 1


def truncate(lat: Lattice, v: FockElement, cutoff) -> FockElement:
    return FockElement({k: c for k, c in v.terms.items()
                        if term_weight(lat, k) <= cutoff})


# ---------------------------------------------------------------------------
# Heisenberg action
# ---------------------------------------------------------------------------

def heis_act(lat: Lattice, h: Sequence, mode: int, v: FockElement) -> FockElement:
    """Apply the Heisenberg mode h(mode), h a rational coordinate vector.

    Negative modes multiply by the creation operator, mode zero scales each
    term by <h, gamma>, positive modes act as the derivation with bracket
    [h(m), h'(-m)] = m <h, h'>.
    """
    hv = [Fraction(x) for x in h]
    out: dict[TermKey, Fraction] = {}

    def bump(key: TermKey, c: Fraction) -> None:
        if c != 0:
            out[key] = out.get(key, Fraction(0)) + c

    if mode < 0:
        n = -mode
        for (mono, gamma), c in v.terms.items():
            for i, hi in enumerate(hv):
                if hi:
                    bump((mono_mul(mono, ((i, n),)), gamma), c * hi)
    elif mode == 0:
        for (mono, gamma), c in v.terms.items():
            bump((mono, gamma), c * inner(lat, hv, gamma))
    else:
        # <h, base_i> for each i, i.e. gram . h
        gh = [sum(lat.gram[i][j] * hv[j] for j in range(lat.rank))
              for i in range(lat.rank)]
        for (mono, gamma), c in v.terms.items():
            seen: set[int] = set()
            for pos, (i, n) in enumerate(mono):
                if n != mode or i in seen:
                    continue
                seen.add(i)
                count = sum(1 for f in mono if f == (i, n))
                reduced = list(mono)
                reduced.remove((i, n))
                bump((tuple(reduced), gamma), c * count * mode * gh[i])
    return FockElement(out)


def heis_multiply(poly: HeisPoly, v: FockElement) -> FockElement:
    """Multiply by a polynomial in creation operators (symmetric algebra product)."""
    out: dict[TermKey, Fraction] = {}
    for pm, pc in poly.items():
        for (mono, gamma), c in v.terms.items():
            key = (mono_mul(pm, mono), gamma)
            val = out.get(key, Fraction(0)) + pc * c
            out[key] = val
    return FockElement(out)


def poly_mul(a: HeisPoly, b: HeisPoly) -> HeisPoly:
    out: HeisPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            key = mono_mul(ma, mb)
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {k: c for k, c in out.items() if c != 0}


# ---------------------------------------------------------------------------
# Canonical monomial coordinates per bidegree
# ---------------------------------------------------------------------------

def partitions_desc(n: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, in descending lex order."""
    if n == 0:
        yield ()
        return
    first = n if cap is None else min(cap, n)
    for part in range(first, 0, -1):
        for rest in partitions_desc(n - part, part):
            yield (part,) + rest


def _color_runs(shape: Sequence[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for part in shape:
        if runs and runs[-1][0] == part:
            runs[-1] = (part, runs[-1][1] + 1)
        else:
            runs.append((part, 1))
    return runs


def _multisets(colors: int, size: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    if size == 0:
        yield ()
        return
    for c in range(start, colors):
        for rest in _multisets(colors, size - 1, c):
            yield (c,) + rest


def colored_monomials(n: int, colors: int) -> Iterator[Mono]:
    """All Heisenberg monomials of total mode sum n over the given colors.

    Ordered by partition shape (descending lex) then by color assignment.
    """
    for shape in partitions_desc(n):
        runs = _color_runs(shape)
        def assign(idx: int, acc: tuple[tuple[int, int], ...]) -> Iterator[Mono]:
            if idx == len(runs):
                yield tuple(sorted(acc))
                return
            part, mult = runs[idx]
            for choice in _multisets(colors, mult):
                yield from assign(idx + 1, acc + tuple((c, part) for c in choice))
        yield from assign(0, ())


def heis_budget(lat: Lattice, gamma: Gamma, weight: Fraction) -> int | None:
    """Total creation degree available at (gamma, weight); None if the slice is empty."""
    n = Fraction(weight) - inner(lat, gamma, gamma) / 2
    if n.denominator != 1 or n < 0:
        return None
    return int(n)


def monomial_basis(lat: Lattice, gamma: Sequence, weight) -> list[Mono]:
    g = tuple(Fraction(x) for x in gamma)
    n = heis_budget(lat, g, Fraction(weight))
    if n is None:
        raise ValueError("invalid bidegree: weight minus half-norm must be a non-negative integer")
    return list(colored_monomials(n, lat.rank))


def coords(lat: Lattice, v: FockElement, gamma: Sequence, weight) -> list[Fraction]:
    """Coefficient vector of the (gamma, weight) component in monomial-basis order."""
    g = tuple(Fraction(x) for x in gamma)
    basis = monomial_basis(lat, g, weight)
    return [v.terms.get((m, g), Fraction(0)) for m in basis]


def from_coords(lat: Lattice, gamma: Sequence, weight, vector: Sequence) -> FockElement:
    g = tuple(Fraction(x) for x in gamma)
    basis = monomial_basis(lat, g, weight)
    if len(vector) != len(basis):
        raise ValueError("coordinate length does not match slice dimension")
    return FockElement({(m, g): Fraction(c) for m, c in zip(basis, vector)})


# ---------------------------------------------------------------------------
# Canonical rendering (golden-test friendly)
# ---------------------------------------------------------------------------

def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def render_term(key: TermKey) -> str:
    mono, gamma = key
    parts = []
    run: dict[tuple[int, int], int] = {}
    for f in mono:
        run[f] = run.get(f, 0) + 1
    for (i, n), mult in sorted(run.items()):
        token = "a%d(-%d)" % (i + 1, n)
        parts.append(token if mult == 1 else token + "^%d" % mult)
    parts.append("e(%s)" % ",".join(_fmt_frac(x) for x in gamma))
    return "*".join(parts)


def render(v: FockElement) -> str:
    if v.is_zero():
        return "0"
    bits = []
    for key in sorted(v.terms):
        c = v.terms[key]
        bits.append("%s %s" % (_fmt_frac(c), render_term(key)))
    return "  +  ".join(bits)
