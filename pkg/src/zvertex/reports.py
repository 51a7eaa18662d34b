"""Deterministic line-oriented key=value report records."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def fmt_value(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
    if isinstance(x, (tuple, list)):
        return ",".join(fmt_value(v) for v in x)
    if x is None:
        return "-"
    return str(x)


def record(kind: str, fields: Iterable[tuple[str, object]]) -> str:
    """One report line; field order is the caller's explicit order."""
    return " ".join([kind] + ["%s=%s" % (k, fmt_value(v)) for k, v in fields])


def gamma_label(gamma) -> str:
    return "(%s)" % ";".join(fmt_value(x) for x in gamma)
