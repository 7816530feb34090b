"""Exact rational scalars.

Every numeric quantity in this package is an exact rational.  We use
``gmpy2.mpq`` when available (fast, exact, canonical lowest terms, positive
denominator) and fall back to :class:`fractions.Fraction`, which has the same
canonical-form guarantees.  All comparisons in the package are exact; there
are no tolerances anywhere.
"""

from __future__ import annotations

from typing import Union

try:  # pragma: no cover - exercised implicitly by the environment
    from gmpy2 import mpq as _mpq

    Rational = type(_mpq(0))

    def rational(num: Union[int, str, "Rational"] = 0, den: int | None = None) -> "Rational":
        if den is None:
            return _mpq(num)
        return _mpq(num, den)

except ImportError:  # pragma: no cover - fallback environment
    from fractions import Fraction as Rational  # type: ignore[assignment]

    def rational(num=0, den=None):  # type: ignore[misc]
        if den is None:
            return Rational(num)
        return Rational(num, den)


Q = rational  # short constructor alias used throughout

ZERO = Q(0)
ONE = Q(1)

RationalLike = Union[int, Rational]


def numerator(q: Rational) -> int:
    return int(q.numerator)


def denominator(q: Rational) -> int:
    return int(q.denominator)


def rational_to_str(q: Rational) -> str:
    """Render as ``"num/den"`` (canonical lowest terms, positive denominator).

    Integers render without the slash, e.g. ``"3"``; halves as ``"1/2"``.
    """
    n, d = numerator(q), denominator(q)
    if d == 1:
        return str(n)
    return f"{n}/{d}"


def rational_from_str(text: str) -> Rational:
    """Parse ``"num/den"`` or ``"num"`` into an exact rational.

    Raises ``ValueError`` on malformed text or a zero denominator.
    """
    s = text.strip()
    if "/" in s:
        num_s, den_s = s.split("/", 1)
        num, den = int(num_s.strip()), int(den_s.strip())
        if den == 0:
            raise ValueError(f"zero denominator in rational literal {text!r}")
        return Q(num, den)
    return Q(int(s))
