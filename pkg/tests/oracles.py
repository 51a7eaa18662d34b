"""Independent oracles for expected values: deliberately different algorithms
from the library code they check."""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def partition_count_gf(n: int, colors: int) -> int:
    """Colored partition count via generating-function convolution.

    Multiplies the truncated series 1/(1-q^k)^colors together, one part size
    at a time, as plain coefficient lists.
    """
    series = [1] + [0] * n
    for part in range(1, n + 1):
        geom = [0] * (n + 1)
        for mult in range(0, n // part + 1):
            # coefficient of q^{part*mult} in 1/(1-q^part)^colors is
            # C(mult + colors - 1, colors - 1)
            num = 1
            for t in range(1, colors):
                num = num * (mult + t) // t
            geom[part * mult] = num
        series = [sum(series[i] * geom[j - i] for i in range(j + 1)) for j in range(n + 1)]
    return series[n]


def exp_series_coefficients(linear_terms, degree: int):
    """Coefficients of exp(sum_m A_m x^m) by explicit exponential summation.

    ``linear_terms``: dict mode -> monomial-key for the commuting symbols
    A_m; returns a list of dicts mapping multisets (sorted tuples of
    monomial keys) to Fractions. Independent of any derivative recursion:
    computes sum_k F^k / k! with F the truncated linear series.
    """
    f = [dict() for _ in range(degree + 1)]
    for m, key in linear_terms.items():
        if 1 <= m <= degree:
            f[m] = {(key,): Fraction(1)}
    result = [dict() for _ in range(degree + 1)]
    result[0] = {(): Fraction(1)}
    power = [dict() for _ in range(degree + 1)]
    power[0] = {(): Fraction(1)}
    for k in range(1, degree + 1):
        nxt = [dict() for _ in range(degree + 1)]
        for d1 in range(degree + 1):
            for mono1, c1 in power[d1].items():
                for d2 in range(1, degree + 1 - d1):
                    for mono2, c2 in f[d2].items():
                        key = tuple(sorted(mono1 + mono2))
                        tgt = nxt[d1 + d2]
                        tgt[key] = tgt.get(key, Fraction(0)) + c1 * c2
        power = nxt
        inv = Fraction(1, factorial(k))
        for d in range(degree + 1):
            for mono, c in power[d].items():
                result[d][mono] = result[d].get(mono, Fraction(0)) + c * inv
    return [{k: c for k, c in layer.items() if c != 0} for layer in result]
