"""Central-extension data for twisted group algebras over the dual lattice.

The extension is encoded by a bilinear 2-cocycle eps0 with values mod an
even integer s, defined on a base of the dual lattice chosen so that
scaled base vectors form a base of the lattice itself. On such a base the
strictly-upper-triangular choice eps0(a_i, a_j) = (s/2)<a_i, a_j> (i < j)
makes every sign on lattice pairs a genuine +-1 and gives the commutator
map the required parity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import linalg
from .lattice import Lattice, Vector, inner

__all__ = [
    "Cocycle", "build_cocycle", "dual_presentation", "epsilon_exp",
    "commutator_exp", "epsilon_sign", "verify_parity",
]


@dataclass(frozen=True)
class Cocycle:
    """Modulus s, cocycle residues on the dual base, and coordinate data.

    ``dual_base``: columns are the adapted dual-base vectors in lattice
    coordinates. ``to_dual``: inverse matrix, mapping lattice coordinates
    to integer coordinates on the adapted base (integral exactly on dual
    vectors). The section convention is e_0 = 1.
    """

    modulus: int
    eps0_base: tuple[tuple[int, ...], ...]
    dual_base: tuple[tuple[Fraction, ...], ...]
    to_dual: tuple[tuple[Fraction, ...], ...]
    scale: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.eps0_base)

    def dual_coords(self, u: Vector) -> tuple[int, ...]:
        coords = linalg.mat_vec(self.to_dual, [Fraction(x) for x in u])
        if any(c.denominator != 1 for c in coords):
            raise ValueError("vector is not in the dual lattice")
        return tuple(int(c) for c in coords)


def dual_presentation(lat: Lattice) -> tuple[list[list[Fraction]], list[int]]:
    """Adapted dual base (as columns) and positive scales n_i.

    When the lattice carries a scale_vector the presentation divides each
    base vector by its scale. Otherwise an adapted pair of bases is
    derived from the Smith normal form of the Gram matrix: U*G*V = D
    yields the dual base G^{-1} U^{-1} whose D-scaled columns are the
    V-transformed lattice base.
    """
    n = lat.rank
    if lat.scale_vector is not None:
        cols = [[Fraction(int(i == j), lat.scale_vector[j]) for j in range(n)]
                for i in range(n)]
        return cols, list(lat.scale_vector)
    u, d, _v = linalg.snf([list(row) for row in lat.gram])
    u_inv = linalg.inverse(u)
    g_inv = linalg.inverse(lat.gram)
    cols = linalg.mat_mul(g_inv, u_inv)
    return cols, [d[i][i] for i in range(n)]


def build_cocycle(lat: Lattice) -> Cocycle:
    base, scale = dual_presentation(lat)
    to_dual = linalg.inverse(base)
    n = lat.rank
    # Gram matrix of the form on the adapted dual base
    cols = [[base[i][j] for i in range(n)] for j in range(n)]
    b = [[inner(lat, cols[i], cols[j]) for j in range(n)] for i in range(n)]
    s = 2 * lcm(*[x.denominator for row in b for x in row])
    half = s // 2
    eps0 = [[int(half * b[i][j]) % s if i < j else 0 for j in range(n)]
            for i in range(n)]
    return Cocycle(
        modulus=s,
        eps0_base=tuple(tuple(row) for row in eps0),
        dual_base=tuple(tuple(row) for row in base),
        to_dual=tuple(tuple(row) for row in to_dual),
        scale=tuple(scale),
    )


def epsilon_exp(coc: Cocycle, alpha: Vector, beta: Vector) -> int:
    """Bilinear extension of eps0 to dual vectors; residue mod s."""
    x = coc.dual_coords(alpha)
    y = coc.dual_coords(beta)
    total = 0
    for i in range(coc.rank):
        if x[i]:
            row = coc.eps0_base[i]
            total += x[i] * sum(row[j] * y[j] for j in range(i + 1, coc.rank))
    return total % coc.modulus


def commutator_exp(coc: Cocycle, alpha: Vector, beta: Vector) -> int:
    return (epsilon_exp(coc, alpha, beta) - epsilon_exp(coc, beta, alpha)) % coc.modulus


def epsilon_sign(coc: Cocycle, alpha: Vector, beta: Vector) -> int:
    """The value of the section sign as +-1; defined when the residue is 0 or s/2."""
    e = epsilon_exp(coc, alpha, beta)
    if e == 0:
        return 1
    if 2 * e == coc.modulus:
        return -1
    raise ValueError("cocycle value %d mod %d is not a sign" % (e, coc.modulus))


def verify_parity(coc: Cocycle, lat: Lattice) -> bool:
    """Check omega_s^{c0(a,b)} = (-1)^{<a,b>} on all lattice base pairs.

    Bilinearity of both sides makes base pairs sufficient. The lattice
    base must consist of dual vectors w.r.t. the stored presentation.
    """
    s = coc.modulus
    half = s // 2
    for i in range(lat.rank):
        for j in range(lat.rank):
            a = lat.base_vector(i)
            b = lat.base_vector(j)
            c0 = commutator_exp(coc, a, b)
            pairing = inner(lat, a, b)
            if pairing.denominator != 1:
                return False
            if c0 != (half * int(pairing)) % s:
                return False
    return True
