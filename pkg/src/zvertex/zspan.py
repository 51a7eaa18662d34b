"""Graded ZZ-module engine: Hermite normal forms, membership, certification.

A slice stores the integer row HNF of a set of rational vectors over a
common positive denominator, so every question about the ZZ-span (rank,
membership, equality) is answered exactly and canonically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from . import linalg

__all__ = ["ZSpanSlice", "span_of", "GradedSpan", "certify_integral_form"]


@dataclass(frozen=True)
class ZSpanSlice:
    """Canonical HNF presentation of a finitely generated ZZ-span in Q^dim."""

    dim: int
    denom: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def fraction_rows(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denom) for x in row] for row in self.rows]

    def membership(self, vector: Sequence) -> list[int] | None:
        """Integer coordinates of vector over the HNF rows, or None."""
        target = [Fraction(x) * self.denom for x in vector]
        if len(target) != self.dim:
            raise ValueError("vector length does not match slice dimension")
        if any(x.denominator != 1 for x in target):
            return None
        vec = [int(x) for x in target]
        coeffs: list[int] = []
        for row in self.rows:
            p = next(j for j, x in enumerate(row) if x != 0)
            if vec[p] % row[p] != 0:
                return None
            q = vec[p] // row[p]
            coeffs.append(q)
            if q:
                vec = [x - q * y for x, y in zip(vec, row)]
        if any(vec):
            return None
        return coeffs

    def contains(self, vector: Sequence) -> bool:
        return self.membership(vector) is not None

    def merged(self, vectors: Iterable[Sequence]) -> "ZSpanSlice":
        return span_of(self.fraction_rows() + [list(v) for v in vectors], self.dim)

    def scaled(self, factor: Fraction) -> "ZSpanSlice":
        f = Fraction(factor)
        return span_of([[x * f for x in row] for row in self.fraction_rows()], self.dim)


def span_of(vectors: Iterable[Sequence], dim: int) -> ZSpanSlice:
    """Canonical slice spanned by rational vectors of length dim."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    for row in rows:
        if len(row) != dim:
            raise ValueError("vector length does not match slice dimension")
    denom = 1
    for row in rows:
        for x in row:
            denom = lcm(denom, x.denominator)
    int_rows = [[int(x * denom) for x in row] for row in rows]
    h = linalg.hnf(int_rows)
    if not h:
        return ZSpanSlice(dim, 1, ())
    g = denom
    for row in h:
        for x in row:
            if x:
                g = gcd(g, x)
    return ZSpanSlice(dim, denom // g, tuple(tuple(x // g for x in row) for row in h))


class GradedSpan:
    """Mapping from grading keys to slices; keys stay sorted for reporting."""

    def __init__(self) -> None:
        self.slices: dict[tuple, ZSpanSlice] = {}

    def set(self, key: tuple, s: ZSpanSlice) -> None:
        self.slices[key] = s

    def add_vectors(self, key: tuple, vectors: Iterable[Sequence], dim: int) -> None:
        if key in self.slices:
            self.slices[key] = self.slices[key].merged(vectors)
        else:
            self.slices[key] = span_of(vectors, dim)

    def get(self, key: tuple) -> ZSpanSlice | None:
        return self.slices.get(key)

    def keys(self) -> list[tuple]:
        return sorted(self.slices)

    def items(self) -> Iterator[tuple[tuple, ZSpanSlice]]:
        for key in self.keys():
            yield key, self.slices[key]

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedSpan) and self.slices == other.slices

    def copy(self) -> "GradedSpan":
        out = GradedSpan()
        out.slices = dict(self.slices)
        return out


def certify_integral_form(span_a: GradedSpan, span_b: GradedSpan) -> list[dict]:
    """Per-key verdicts: rank(A) = dim and A = B as ZZ-modules.

    On span inequality the record carries a witness vector lying in one
    span but not the other.
    """
    records: list[dict] = []
    for key in sorted(set(span_a.slices) | set(span_b.slices)):
        a = span_a.get(key)
        b = span_b.get(key)
        if a is None or b is None or a.dim != b.dim:
            records.append({"key": key, "ok": False, "reason": "frame mismatch"})
            continue
        rec: dict = {"key": key, "dim": a.dim, "rank_a": a.rank, "rank_b": b.rank}
        if a.rank != a.dim:
            rec.update(ok=False, reason="rank below dimension")
        elif a != b:
            witness = next(
                (row for row in a.fraction_rows() if not b.contains(row)),
                None,
            )
            if witness is None:
                witness = next(row for row in b.fraction_rows() if not a.contains(row))
            rec.update(ok=False, reason="span mismatch", witness=witness)
        else:
            rec.update(ok=True)
        records.append(rec)
    return records
