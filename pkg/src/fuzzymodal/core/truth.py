"""Exact truth values in [0, 1].

Truth values are plain :class:`fractions.Fraction` instances; the helpers
here enforce the range and implement the Zadeh connectives.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

Truth = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = re.compile(r"^(\d+)/(\d+)$")
_DECIMAL = re.compile(r"^(\d+)(?:\.(\d+))?$")


class TruthRangeError(ValueError):
    pass


def truth(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce ``value`` to a Fraction and check it lies in [0, 1].

    Floats are refused on purpose; use a string such as ``"0.1"`` instead.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted as truth values; pass a string or Fraction")
    if isinstance(value, str):
        return parse_truth(value)
    t = Fraction(value)
    if not 0 <= t <= 1:
        raise TruthRangeError(f"truth value outside [0,1]: {t}")
    return t


def parse_truth(text: str) -> Fraction:
    """Parse ``p/q`` or a finite decimal exactly (``"0.5"`` -> 1/2)."""
    text = text.strip()
    m = _RATIONAL.match(text)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        t = Fraction(num, den)
    else:
        m = _DECIMAL.match(text)
        if not m:
            raise ValueError(f"not a rational literal: {text!r}")
        whole, frac = m.group(1), m.group(2) or ""
        t = Fraction(int(whole + frac), 10 ** len(frac))
    if not 0 <= t <= 1:
        raise TruthRangeError(f"truth value outside [0,1]: {text}")
    return t


def tsub(a: Fraction, c: Fraction) -> Fraction:
    """Truncated subtraction max(a - c, 0)."""
    return a - c if a > c else ZERO


def complement(a: Fraction) -> Fraction:
    return ONE - a


def abs_diff(a: Fraction, b: Fraction) -> Fraction:
    return a - b if a >= b else b - a


def format_truth(t: Fraction) -> str:
    if t.denominator == 1:
        return str(t.numerator)
    return f"{t.numerator}/{t.denominator}"


def format_decimal(t: Fraction, digits: int = 6) -> str:
    """Shortest exact decimal if one exists, else a rounded one prefixed by ``~``."""
    den = t.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den == 1:
        k = 0
        while (t * 10**k).denominator != 1:
            k += 1
        scaled = t.numerator * 10**k // t.denominator
        s = str(scaled).rjust(k + 1, "0")
        return s if k == 0 else f"{s[:-k]}.{s[-k:]}"
    return "~" + f"{float(t):.{digits}f}"


def grid_denominator(values: Iterable[Fraction]) -> int:
    """Least common denominator of ``values`` (1 for an empty iterable)."""
    L = 1
    for v in values:
        L = math.lcm(L, Fraction(v).denominator)
    return L


def grid(L: int) -> list[Fraction]:
    """The value grid {0, 1/L, ..., 1}."""
    return [Fraction(k, L) for k in range(L + 1)]
