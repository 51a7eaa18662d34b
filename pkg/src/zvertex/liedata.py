"""Finite-dimensional Lie algebra data over ZZ, with validation at load.

A LieData bundles integer structure constants on a distinguished basis, an
integer-valued symmetric invariant form, the dual Coxeter number, markers
for which basis elements are root vectors, and the transpose
anti-involution pairing opposite root vectors. Everything is checked
exhaustively at construction: antisymmetry, the Jacobi identity, form
invariance, and the anti-automorphism property of the transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParseError

Combo = tuple[tuple[int, int], ...]          # ((coefficient, basis index), ...)


def _normalize_combo(terms: Mapping[int, int]) -> Combo:
    return tuple((c, i) for i, c in sorted(terms.items()) if c != 0)


@dataclass(frozen=True)
class LieData:
    names: tuple[str, ...]
    bracket_table: tuple[tuple[Combo, ...], ...]   # [i][j] = [b_i, b_j]
    form: tuple[tuple[int, ...], ...]
    dual_coxeter: int
    roots: tuple[int, ...]                          # indices of root vectors
    transpose: tuple[tuple[int, int], ...]          # per index: (sign, index)

    def __post_init__(self) -> None:
        n = self.dim
        if len(self.form) != n or any(len(r) != n for r in self.form):
            raise ValueError("form matrix must be dim x dim")
        if any(self.form[i][j] != self.form[j][i] for i in range(n) for j in range(n)):
            raise ValueError("form must be symmetric")
        _validate_structure(self)

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket(self, i: int, j: int) -> Combo:
        return self.bracket_table[i][j]

    def bracket_combo(self, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, ca in a.items():
            if not ca:
                continue
            for j, cb in b.items():
                if not cb:
                    continue
                for coeff, k in self.bracket_table[i][j]:
                    out[k] = out.get(k, Fraction(0)) + ca * cb * coeff
        return {k: c for k, c in out.items() if c != 0}

    def pairing(self, i: int, j: int) -> int:
        return self.form[i][j]

    def index(self, name: str) -> int:
        return self.names.index(name)


def _combo_to_dict(c: Combo) -> dict[int, Fraction]:
    return {i: Fraction(coeff) for coeff, i in c}


def _validate_structure(g: LieData) -> None:
    n = g.dim
    t = g.bracket_table
    if len(t) != n or any(len(row) != n for row in t):
        raise ValueError("bracket table must be dim x dim")
    for i in range(n):
        for j in range(n):
            if _combo_to_dict(t[i][j]) != {k: Fraction(-c) for c, k in t[j][i]}:
                raise ValueError("bracket table is not antisymmetric at (%d, %d)" % (i, j))
    # Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 on all basis triples
    for a in range(n):
        for b in range(n):
            for c in range(n):
                acc: dict[int, Fraction] = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = _combo_to_dict(t[x][y])
                    for k, coeff in g.bracket_combo(inner, {z: Fraction(1)}).items():
                        acc[k] = acc.get(k, Fraction(0)) + coeff
                if any(v != 0 for v in acc.values()):
                    raise ValueError("Jacobi identity fails on basis triple (%d,%d,%d)" % (a, b, c))
    # invariance <[a,b],c> = <a,[b,c]>
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = sum(coeff * g.form[k][c] for coeff, k in t[a][b])
                rhs = sum(coeff * g.form[a][k] for coeff, k in t[b][c])
                if lhs != rhs:
                    raise ValueError("form is not invariant at (%d,%d,%d)" % (a, b, c))
    # transpose: involutive anti-automorphism preserving the form
    tau = g.transpose
    if len(tau) != n:
        raise ValueError("transpose map must cover the basis")
    for i in range(n):
        s, j = tau[i]
        if s not in (-1, 1):
            raise ValueError("transpose signs must be +-1")
        s2, i2 = tau[j]
        if (s * s2, i2) != (1, i):
            raise ValueError("transpose must be an involution")
    for a in range(n):
        for b in range(n):
            sa, ta = tau[a]
            sb, tb = tau[b]
            lhs: dict[int, Fraction] = {}
            for coeff, k in t[a][b]:
                sk, tk = tau[k]
                lhs[tk] = lhs.get(tk, Fraction(0)) + coeff * sk
            rhs = g.bracket_combo({tb: Fraction(sb)}, {ta: Fraction(sa)})
            if {k: v for k, v in lhs.items() if v} != rhs:
                raise ValueError("transpose is not an anti-automorphism at (%d,%d)" % (a, b))
            if g.form[ta][tb] * sa * sb != g.form[a][b]:
                raise ValueError("transpose does not preserve the form at (%d,%d)" % (a, b))
    for r in g.roots:
        if not 0 <= r < n:
            raise ValueError("root marker out of range")


def _table_from_dict(dim: int, entries: Mapping[tuple[int, int], Mapping[int, int]]):
    table = [[() for _ in range(dim)] for _ in range(dim)]
    for (i, j), combo in entries.items():
        table[i][j] = _normalize_combo({k: c for k, c in combo.items()})
        table[j][i] = _normalize_combo({k: -c for k, c in combo.items()})
    return tuple(tuple(row) for row in table)


def sl2() -> LieData:
    """Chevalley basis (e, h, f): [h,e]=2e, [h,f]=-2f, [e,f]=h; <e,f>=1, <h,h>=2."""
    names = ("e", "h", "f")
    e, h, f = 0, 1, 2
    entries = {
        (h, e): {e: 2},
        (h, f): {f: -2},
        (e, f): {h: 1},
    }
    form = ((0, 0, 1), (0, 2, 0), (1, 0, 0))
    tau = ((1, f), (1, h), (1, e))
    return LieData(names, _table_from_dict(3, entries), form, 2, (e, f), tau)


def sl3() -> LieData:
    """Chevalley basis of sl3 in the elementary-matrix realization.

    e12 = [e1, e2], f12 = -[f1, f2]; the form is the trace form of the
    three-dimensional representation, the transpose is matrix transpose.
    """
    names = ("e1", "e2", "e12", "f1", "f2", "f12", "h1", "h2")
    e1, e2, e12, f1, f2, f12, h1, h2 = range(8)
    entries = {
        (e1, e2): {e12: 1},
        (f1, f2): {f12: -1},
        (e1, f1): {h1: 1},
        (e2, f2): {h2: 1},
        (e12, f12): {h1: 1, h2: 1},
        (e1, f12): {f2: -1},
        (e12, f1): {e2: -1},
        (e2, f12): {f1: 1},
        (e12, f2): {e1: 1},
        (h1, e1): {e1: 2},
        (h1, e2): {e2: -1},
        (h1, e12): {e12: 1},
        (h2, e1): {e1: -1},
        (h2, e2): {e2: 2},
        (h2, e12): {e12: 1},
        (h1, f1): {f1: -2},
        (h1, f2): {f2: 1},
        (h1, f12): {f12: -1},
        (h2, f1): {f1: 1},
        (h2, f2): {f2: -2},
        (h2, f12): {f12: -1},
    }
    form = (
        (0, 0, 0, 1, 0, 0, 0, 0),
        (0, 0, 0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 0, 1, 0, 0),
        (1, 0, 0, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 0, 2, -1),
        (0, 0, 0, 0, 0, 0, -1, 2),
    )
    tau = ((1, f1), (1, f2), (1, f12), (1, e1), (1, e2), (1, e12), (1, h1), (1, h2))
    return LieData(names, _table_from_dict(8, entries), form, 3,
                   (e1, e2, e12, f1, f2, f12), tau)


BUILTIN = {"sl2": sl2, "sl3": sl3}


def parse_liedata(text: str) -> LieData:
    """Parse the Lie data file format.

    Lines: ``dim N``, ``basis name...``, ``bracket a b = c1 name1 [c2 name2 ...]``,
    ``form r1 ... rN`` (one per row), ``coxeter H``, ``root name``,
    ``transpose a = [-]b``. '#' starts a comment.
    """
    dim = None
    names: list[str] = []
    entries: dict[tuple[int, int], dict[int, int]] = {}
    form_rows: list[list[int]] = []
    coxeter = None
    roots: list[str] = []
    transpose: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        key = fields[0]
        try:
            if key == "dim":
                dim = int(fields[1])
            elif key == "basis":
                names = fields[1:]
            elif key == "bracket":
                a, b = fields[1], fields[2]
                if fields[3] != "=":
                    raise ParseError("line %d: expected '='" % lineno)
                combo: dict[str, int] = {}
                rest = fields[4:]
                if len(rest) % 2 != 0:
                    raise ParseError("line %d: bracket needs coefficient/name pairs" % lineno)
                for t in range(0, len(rest), 2):
                    combo[rest[t + 1]] = combo.get(rest[t + 1], 0) + int(rest[t])
                entries[(a, b)] = combo  # type: ignore[index]
            elif key == "form":
                form_rows.append([int(x) for x in fields[1:]])
            elif key == "coxeter":
                coxeter = int(fields[1])
            elif key == "root":
                roots.extend(fields[1:])
            elif key == "transpose":
                if fields[2] != "=":
                    raise ParseError("line %d: expected '='" % lineno)
                tgt = fields[3]
                sign = 1
                if tgt.startswith("-"):
                    sign, tgt = -1, tgt[1:]
                transpose[fields[1]] = (sign, tgt)
            else:
                raise ParseError("line %d: unknown key %r" % (lineno, key))
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError("line %d: %s" % (lineno, raw.strip())) from None
    if dim is None or not names or coxeter is None:
        raise ParseError("dim, basis and coxeter lines are required")
    if len(names) != dim:
        raise ParseError("basis names do not match dim")
    idx = {n: i for i, n in enumerate(names)}
    try:
        table_entries = {(idx[a], idx[b]): {idx[n]: c for n, c in combo.items()}
                         for (a, b), combo in entries.items()}
        tau = tuple((transpose[n][0], idx[transpose[n][1]]) for n in names)
        root_idx = tuple(idx[n] for n in roots)
    except KeyError as exc:
        raise ParseError("unknown basis name %s" % exc) from None
    if len(form_rows) != dim:
        raise ParseError("expected %d form rows" % dim)
    try:
        return LieData(tuple(names), _table_from_dict(dim, table_entries),
                       tuple(tuple(r) for r in form_rows), coxeter, root_idx, tau)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_liedata(spec: str, text: str | None = None) -> LieData:
    """Resolve a builtin name or parse file contents."""
    if spec in BUILTIN:
        return BUILTIN[spec]()
    if text is None:
        raise ParseError("unknown builtin Lie data %r" % spec)
    return parse_liedata(text)


# ---------------------------------------------------------------------------
# Finite-dimensional modules with integral structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GModule:
    """Module over a LieData: one integer matrix per basis element.

    action[a][i][j] is the coefficient of u_i in b_a . u_j; columns index
    the source vector. Validated against the bracket table at load.
    """

    lie: LieData
    action: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        d = self.dim
        for a in range(self.lie.dim):
            for b in range(self.lie.dim):
                for i in range(d):
                    for j in range(d):
                        lhs = sum(self.action[a][i][k] * self.action[b][k][j]
                                  - self.action[b][i][k] * self.action[a][k][j]
                                  for k in range(d))
                        rhs = sum(coeff * self.action[k][i][j]
                                  for coeff, k in self.lie.bracket_table[a][b])
                        if lhs != rhs:
                            raise ValueError("module action violates the bracket at (%d,%d)" % (a, b))

    @property
    def dim(self) -> int:
        return len(self.action[0]) if self.action else 0

    def act(self, a: int, j: int) -> dict[int, Fraction]:
        return {i: Fraction(self.action[a][i][j])
                for i in range(self.dim) if self.action[a][i][j]}


def trivial_module(g: LieData) -> GModule:
    zero = tuple(((0,),) for _ in range(g.dim))
    return GModule(g, zero)


def sl2_irrep(d: int) -> GModule:
    """(d+1)-dimensional irreducible sl2 module on its divided-power basis.

    Basis v_0..v_d with f.v_k = (k+1) v_{k+1}, e.v_k = (d-k+1) v_{k-1},
    h.v_k = (d-2k) v_k; all matrix entries integral.
    """
    if d < 0:
        raise ValueError("highest weight must be non-negative")
    g = sl2()
    n = d + 1
    e_mat = [[0] * n for _ in range(n)]
    f_mat = [[0] * n for _ in range(n)]
    h_mat = [[0] * n for _ in range(n)]
    for k in range(n):
        h_mat[k][k] = d - 2 * k
        if k + 1 < n:
            f_mat[k + 1][k] = k + 1
        if k - 1 >= 0:
            e_mat[k - 1][k] = d - k + 1
    mats = (e_mat, h_mat, f_mat)
    return GModule(g, tuple(tuple(tuple(row) for row in m) for m in mats))
