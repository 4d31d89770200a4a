"""tools for performing standard compnet tasks"""

import json as _json
import math as _math
import re as _re
import multiprocessing as _mp
from fractions import Fraction
from typing import Any, List, Sequence

from compnet.src.core import error as _error, fields as _fields

# bits of accuracy for square-root certificates in Lipschitz bounds
SQRT_PRECISION = 16
# bits of accuracy for the exit-flag threshold certificate
EXIT_FLAG_PRECISION = 32
DEFAULT_FUEL = 64
DEFAULT_MAX_STEPS = 10 ** 6
MAX_CHECKED_INDEX = 64
JSON_INDENT = 2
NUMBER_OF_THREADS = _mp.cpu_count()

_RATIONAL_PATTERN = _re.compile(r'^([+-]?\d+)(?:/(\d+))?$')


def dyadic(k: int) -> Fraction:
    """Returns 2^(-k) as an exact rational"""
    if k >= 0:
        return Fraction(1, 1 << k)
    return Fraction(1 << -k)


def ceil_log2(q: Fraction) -> int:
    """Returns the smallest n >= 0 with 2^n >= q"""
    if q <= 1:
        return 0
    return (_math.ceil(q) - 1).bit_length()


def _is_square(n: int) -> bool:
    return n >= 0 and _math.isqrt(n) ** 2 == n


def sqrt_upper_bound(r: Fraction, precision: int = SQRT_PRECISION) -> Fraction:
    """Returns a rational u with sqrt(r) <= u <= sqrt(r) + 2^(-precision).
    Perfect-square rationals come back exact."""
    r = Fraction(r)
    if r < 0:
        raise ValueError('square root of a negative rational')
    if _is_square(r.numerator) and _is_square(r.denominator):
        return Fraction(_math.isqrt(r.numerator), _math.isqrt(r.denominator))
    scaled = _math.floor(r * 4 ** precision)
    return Fraction(_math.isqrt(scaled) + 1, 1 << precision)


def sqrt_lower_bound(r: Fraction, precision: int = SQRT_PRECISION) -> Fraction:
    """Returns a rational l with sqrt(r) - 2^(-precision) <= l <= sqrt(r).
    Perfect-square rationals come back exact."""
    r = Fraction(r)
    if r < 0:
        raise ValueError('square root of a negative rational')
    if _is_square(r.numerator) and _is_square(r.denominator):
        return Fraction(_math.isqrt(r.numerator), _math.isqrt(r.denominator))
    scaled = _math.floor(r * 4 ** precision)
    return Fraction(_math.isqrt(scaled), 1 << precision)


def squared_distance(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """Returns the exact squared Euclidean distance between two vectors"""
    return sum(((a - b) ** 2 for a, b in zip(x, y)), Fraction(0))


def to_json(document: Any) -> str:
    """Serializes a document with stable key ordering"""
    return _json.dumps(document, sort_keys=True, indent=JSON_INDENT) + '\n'


class Text:
    """Class for handling textual operations for the core module"""
    @staticmethod
    def format_rational(q: Fraction) -> str:
        """Renders a rational in canonical "p/q" form ("0/1" for zero)"""
        q = Fraction(q)
        return f'{q.numerator}{_fields.Rational.SEPARATOR}{q.denominator}'

    @staticmethod
    def parse_rational(text: Any) -> Fraction:
        """Reads "p/q" or a bare integer. Decimals are rejected so that no
        floating point value ever enters a certificate."""
        if isinstance(text, bool):
            raise _error.InvalidRationalError(str(text))
        if isinstance(text, int):
            return Fraction(text)
        if not isinstance(text, str):
            raise _error.InvalidRationalError(str(text))
        match = _RATIONAL_PATTERN.match(text.strip())
        if not match:
            raise _error.InvalidRationalError(text)
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) else 1
        if denominator == 0:
            raise _error.InvalidRationalError(text)
        return Fraction(numerator, denominator)

    @staticmethod
    def parse_rational_list(text: str) -> List[Fraction]:
        """Reads a comma-separated list of rationals"""
        parts = [part for part in text.split(',') if part.strip()]
        if not parts:
            raise _error.InvalidRationalError(text)
        return [Text.parse_rational(part) for part in parts]

    @staticmethod
    def parse_architecture(text: str) -> List[int]:
        """Reads an architecture such as "2,3,1" """
        try:
            dims = [int(part) for part in text.split(',')]
        except ValueError:
            raise _error.InvalidArchitectureError(reason=text)
        return dims

    @staticmethod
    def decimal(q: Fraction, digits: int = 12) -> str:
        """Renders a rational as a decimal truncated toward zero"""
        q = Fraction(q)
        sign = '-' if q < 0 else ''
        q = abs(q)
        whole = q.numerator // q.denominator
        scaled = (q - whole) * 10 ** digits
        fraction = scaled.numerator // scaled.denominator
        if digits == 0:
            return f'{sign}{whole}'
        return f'{sign}{whole}.{fraction:0{digits}d}'
