"""Exact rational coefficient type.

gmpy2's mpq is used when available; otherwise fractions.Fraction.
Both hash and compare equal to each other, so callers may mix them.
"""

from __future__ import annotations

from fractions import Fraction

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _mpq

    def QQ(value, den=None):
        if den is not None:
            return _mpq(value, den)
        if isinstance(value, Fraction):
            return _mpq(value.numerator, value.denominator)
        if isinstance(value, float):
            return _mpq(Fraction(value))
        return _mpq(value)

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    def QQ(value, den=None):
        if den is not None:
            return Fraction(value, den)
        return Fraction(value)

    HAVE_GMPY2 = False


ZERO = QQ(0)
ONE = QQ(1)


def to_fraction(q) -> Fraction:
    """Convert an exact coefficient to a plain Fraction."""
    return Fraction(int(q.numerator), int(q.denominator))


def parse_rational(text: str):
    """Parse "3", "3/7", "-2" or a decimal such as "1.41" exactly."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    try:
        return QQ(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational literal {text!r}") from exc


def rational_json(q) -> dict:
    f = to_fraction(QQ(q))
    return {"num": str(f.numerator), "den": str(f.denominator)}
