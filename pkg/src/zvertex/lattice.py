"""Integer lattices presented by a base and Gram matrix.

A lattice is always handled through a distinguished base: vectors are
coordinate tuples in that base, elements of the dual get rational
coordinates. Only non-degeneracy is enforced so that indefinite Gram
matrices (hyperbolic planes and friends) are first-class inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from . import linalg
from .errors import ParseError

Vector = tuple[Fraction, ...]


def vec(*coords) -> Vector:
    return tuple(Fraction(c) for c in coords)


def zero_vector(rank: int) -> Vector:
    return tuple(Fraction(0) for _ in range(rank))


def add_vec(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def neg_vec(u: Vector) -> Vector:
    return tuple(-a for a in u)


@dataclass(frozen=True)
class Lattice:
    """Base + symmetric non-degenerate integer Gram matrix.

    ``scale_vector``, when present, asserts that dividing the i-th base
    vector by scale_vector[i] yields a base of the dual lattice; this is
    validated at construction.
    """

    gram: tuple[tuple[int, ...], ...]
    scale_vector: tuple[int, ...] | None = None
    _dual: tuple[tuple[Fraction, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        g = self.gram
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("gram matrix must be square and non-empty")
        if any(not isinstance(x, int) for row in g for x in row):
            raise ValueError("gram entries must be integers")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram matrix must be symmetric")
        try:
            dual = linalg.inverse(g)
        except ValueError:
            raise ValueError("gram matrix must be non-degenerate") from None
        object.__setattr__(self, "_dual", tuple(tuple(row) for row in dual))
        if self.scale_vector is not None:
            s = self.scale_vector
            if len(s) != n or any(x < 1 for x in s):
                raise ValueError("scale_vector must hold one positive integer per base vector")
            if prod(s) != abs(linalg.det(g)):
                raise ValueError("scale_vector product must equal |det gram|")
            for i in range(n):
                if any(g[i][j] % s[i] != 0 for j in range(n)):
                    raise ValueError("scale_vector[%d] must divide row %d of gram" % (i, i))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def zero(self) -> Vector:
        return zero_vector(self.rank)

    def base_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(i == j)) for j in range(self.rank))


def inner(lat: Lattice, u, v) -> Fraction:
    """Exact value of the bilinear form on coordinate vectors."""
    if len(u) != lat.rank or len(v) != lat.rank:
        raise ValueError("coordinate length does not match rank")
    return sum(Fraction(u[i]) * lat.gram[i][j] * Fraction(v[j])
               for i in range(lat.rank) for j in range(lat.rank))


def dual_basis(lat: Lattice) -> list[list[Fraction]]:
    """Matrix whose column i gives the coordinates of the i-th dual base vector."""
    return [list(row) for row in lat._dual]


def dual_base_vector(lat: Lattice, i: int) -> Vector:
    return tuple(lat._dual[j][i] for j in range(lat.rank))


def is_self_dual(lat: Lattice) -> bool:
    return all(x.denominator == 1 for row in lat._dual for x in row)


def is_even(lat: Lattice) -> bool:
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def determinant(lat: Lattice) -> int:
    d = linalg.det(lat.gram)
    return int(d)


def in_lattice(u: Vector) -> bool:
    return all(Fraction(x).denominator == 1 for x in u)


def in_dual(lat: Lattice, u: Vector) -> bool:
    """Whether u pairs integrally with every base vector."""
    return all(inner(lat, u, lat.base_vector(i)).denominator == 1
               for i in range(lat.rank))


def min_sector_weight(lat: Lattice, gamma: Vector) -> Fraction:
    return inner(lat, gamma, gamma) / 2


def parse_lattice(text: str) -> Lattice:
    """Parse the lattice file format: rank / gram rows / optional scale line.

    Exact integers only; '#' starts a comment.
    """
    rank = None
    gram_rows: list[list[int]] = []
    scale: list[int] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        key, args = fields[0], fields[1:]
        try:
            values = [int(x) for x in args]
        except ValueError:
            raise ParseError("line %d: non-integer value in %r" % (lineno, raw.strip()))
        if key == "rank":
            if len(values) != 1:
                raise ParseError("line %d: rank takes one integer" % lineno)
            rank = values[0]
        elif key == "gram":
            gram_rows.append(values)
        elif key == "scale":
            scale = values
        else:
            raise ParseError("line %d: unknown key %r" % (lineno, key))
    if rank is None:
        raise ParseError("missing 'rank' line")
    if len(gram_rows) != rank or any(len(r) != rank for r in gram_rows):
        raise ParseError("expected %d gram rows of length %d" % (rank, rank))
    try:
        return Lattice(tuple(tuple(r) for r in gram_rows),
                       tuple(scale) if scale is not None else None)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def a1() -> Lattice:
    return Lattice(((2,),), scale_vector=(2,))


def a2() -> Lattice:
    return Lattice(((2, -1), (-1, 2)))


def hyperbolic_plane() -> Lattice:
    return Lattice(((0, 1), (1, 0)), scale_vector=(1, 1))


def e8() -> Lattice:
    """E8 root lattice via its Cartan matrix (Bourbaki node ordering)."""
    bonds = {(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)}
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for i, j in bonds:
        g[i - 1][j - 1] = g[j - 1][i - 1] = -1
    return Lattice(tuple(tuple(row) for row in g), scale_vector=(1,) * 8)
