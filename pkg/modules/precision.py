"""mpmath set-up and exact conversions between Fractions and mpmath values."""
import math
from decimal import Decimal
from fractions import Fraction

from mpmath import iv, mp

from modules.config import Config
from modules.errors import InvalidInputError

mp.prec = Config.PRECISION_BITS
iv.prec = Config.PRECISION_BITS


def to_mpf(value: Fraction):
    """Nearest mpf to a rational."""
    value = Fraction(value)
    return mp.mpf(value.numerator) / value.denominator


def to_interval(value: Fraction):
    """Outward-rounded interval enclosing a rational."""
    value = Fraction(value)
    return iv.mpf(value.numerator) / iv.mpf(value.denominator)


def lower(interval):
    return mp.mpf(interval.a)


def upper(interval):
    return mp.mpf(interval.b)


def mpf_to_fraction(value) -> Fraction:
    """Exact rational value of a finite mpf."""
    value = mp.mpf(value)
    if not mp.isfinite(value):
        raise InvalidInputError(f"Cannot convert {value} to a rational")
    sign, man, exp, _ = value._mpf_
    # man may be a gmpy2 mpz; Fraction and Decimal need a plain int.
    man, exp = (-int(man) if sign else int(man)), int(exp)
    if exp >= 0:
        return Fraction(man * 2 ** exp)
    return Fraction(man, 2 ** -exp)


def ceil_decimal(value, places: int) -> Decimal:
    """Round a finite mpf toward +inf at `places` decimals."""
    scaled = math.ceil(mpf_to_fraction(value) * 10 ** places)
    return Decimal(int(scaled)).scaleb(-places)


def fraction_decimal(value: Fraction, digits: int = 12) -> str:
    """Decimal rendering of a rational with `digits` significant digits."""
    return mp.nstr(to_mpf(value), digits, strip_zeros=False)
