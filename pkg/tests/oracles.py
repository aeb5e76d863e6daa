"""Independent reference computations used by the tests."""

from decimal import Decimal, getcontext
from fractions import Fraction
from math import isqrt


def pell_unit(d, y_max=10**6):
    """Smallest totally positive unit > 1 by direct search over y.

    Returns ``(a, b)`` with the unit equal to ``a + b sqrt d`` (rationals).
    For ``d = 1 mod 4`` half-integers are allowed: search ``x^2 - d y^2 = 4``.
    """
    if d % 4 == 1:
        for y in range(1, y_max + 1):
            t = d * y * y + 4
            x = isqrt(t)
            if x * x == t:
                return Fraction(x, 2), Fraction(y, 2)
    else:
        for y in range(1, y_max + 1):
            t = d * y * y + 1
            x = isqrt(t)
            if x * x == t:
                return Fraction(x), Fraction(y)
    raise ValueError(f"no unit with y <= {y_max} for d={d}")


def minus_cf_digits(p, q, d, n, digits=600):
    """First ``n`` digits of the minus continued fraction of ``(p + sqrt d)/q`` in Decimal."""
    getcontext().prec = digits
    w = (Decimal(p) + Decimal(d).sqrt()) / Decimal(q)
    out = []
    for _ in range(n):
        b = int(w.to_integral_value(rounding="ROUND_CEILING"))
        out.append(b)
        w = 1 / (b - w)
    return out
