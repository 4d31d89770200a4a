"""A module for exact rationals and computable reals.

A computable real is stored as a rapidly converging rational Cauchy name:
``approx(k)`` lies within 2^(-k) of the represented value for every k >= 0.
Names handed in with a slower modulus have to be reindexed before they are
wrapped. Every approximation is memoized per index, so asking for the same
index twice returns the identical rational.
"""
import logging as _logging
import math as _math
import threading as _threading
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from compnet.src.core import option as _option, util as _util

_logger = _logging.getLogger(__name__)

Rational = Fraction
ApproxFunc = Callable[[int], Fraction]


class CReal:
    """A computable real given by a precision-indexed approximation"""

    def __init__(self, approx_func: ApproxFunc, label: str = 'creal',
                 exact: Optional[Fraction] = None):
        self._approx_func = approx_func
        self._memo: Dict[int, Fraction] = {}
        self._lock = _threading.Lock()
        self._label = label
        self._exact = exact

    def __repr__(self) -> str:
        return f'CReal<{self._label}>'

    def approx(self, k: int) -> Fraction:
        """Returns a rational within 2^(-k) of the represented real"""
        if k < 0:
            raise ValueError('precision index must be non-negative')
        with self._lock:
            cached = self._memo.get(k)
        if cached is not None:
            return cached
        value = Fraction(self._approx_func(k))
        with self._lock:
            return self._memo.setdefault(k, value)

    @property
    def label(self) -> str:
        """a short description of how the real was built"""
        return self._label

    @property
    def exact(self) -> Optional[Fraction]:
        """the exact value when the real is a rational constant"""
        return self._exact

    def __add__(self, other: 'CReal') -> 'CReal':
        return creal_add(self, other)

    def __sub__(self, other: 'CReal') -> 'CReal':
        return creal_sub(self, other)

    def __mul__(self, other: 'CReal') -> 'CReal':
        return creal_mul(self, other)

    def __neg__(self) -> 'CReal':
        return creal_neg(self)

    def __abs__(self) -> 'CReal':
        return creal_abs(self)


class CRealVector:
    """An ordered tuple of computable reals"""

    def __init__(self, components: Sequence[CReal]):
        if len(components) < 1:
            raise ValueError('a CRealVector needs at least one component')
        self._components = tuple(components)

    def __repr__(self) -> str:
        return f'CRealVector<{self.dimension}>'

    def __len__(self) -> int:
        return len(self._components)

    def __iter__(self) -> Iterator[CReal]:
        return iter(self._components)

    def __getitem__(self, index: int) -> CReal:
        return self._components[index]

    @property
    def components(self) -> tuple:
        """the component reals"""
        return self._components

    @property
    def dimension(self) -> int:
        """the number of components"""
        return len(self._components)

    def approx(self, k: int) -> List[Fraction]:
        """Returns every component approximated to 2^(-k)"""
        return [c.approx(k) for c in self._components]


def creal_from_rational(q: Fraction) -> CReal:
    """Returns the constant name of a rational"""
    q = Fraction(q)
    return CReal(lambda k: q, label=_util.Text.format_rational(q), exact=q)


def creal_vector_from_rationals(xs: Sequence[Fraction]) -> CRealVector:
    """Lifts a rational vector to a CRealVector"""
    return CRealVector([creal_from_rational(x) for x in xs])


def creal_add(a: CReal, b: CReal) -> CReal:
    """Returns the computable sum a + b"""
    def add_approx(k: int) -> Fraction:
        return a.approx(k + 1) + b.approx(k + 1)

    return CReal(add_approx, label=f'({a.label} + {b.label})',
                 exact=_exact_or_none(a, b, lambda x, y: x + y))


def creal_sub(a: CReal, b: CReal) -> CReal:
    """Returns the computable difference a - b"""
    def sub_approx(k: int) -> Fraction:
        return a.approx(k + 1) - b.approx(k + 1)

    return CReal(sub_approx, label=f'({a.label} - {b.label})',
                 exact=_exact_or_none(a, b, lambda x, y: x - y))


def creal_mul(a: CReal, b: CReal) -> CReal:
    """Returns the computable product a * b"""
    def mul_approx(k: int) -> Fraction:
        # |ab - a'b'| <= |b'||a - a'| + |a||b - b'|, both halves <= 2^(-k-1)
        k_a = k + 2 + _util.ceil_log2(abs(b.approx(0)) + 2)
        k_b = k + 2 + _util.ceil_log2(abs(a.approx(0)) + 2)
        return a.approx(k_a) * b.approx(k_b)

    return CReal(mul_approx, label=f'({a.label} * {b.label})',
                 exact=_exact_or_none(a, b, lambda x, y: x * y))


def creal_neg(a: CReal) -> CReal:
    """Returns the computable negation -a"""
    exact = -a.exact if a.exact is not None else None
    return CReal(lambda k: -a.approx(k), label=f'-{a.label}', exact=exact)


def creal_abs(a: CReal) -> CReal:
    """Returns the computable absolute value |a|"""
    exact = abs(a.exact) if a.exact is not None else None
    return CReal(lambda k: abs(a.approx(k)), label=f'|{a.label}|', exact=exact)


def creal_scale(a: CReal, q: Fraction) -> CReal:
    """Returns q * a for an exact rational factor q"""
    q = Fraction(q)
    extra = _util.ceil_log2(abs(q))
    exact = q * a.exact if a.exact is not None else None
    return CReal(lambda k: q * a.approx(k + extra),
                 label=f'{_util.Text.format_rational(q)}*{a.label}',
                 exact=exact)


def creal_compare(a: CReal, b: CReal, fuel: int) -> str:
    """Certified comparison. Returns LESS or GREATER once the approximation
    intervals at some precision p <= fuel are disjoint, UNKNOWN otherwise.
    Equal reals never separate."""
    if fuel < 1:
        raise ValueError('fuel must be positive')
    for p in range(fuel + 1):
        gap = 2 * _util.dyadic(p)
        a_p, b_p = a.approx(p), b.approx(p)
        if a_p + gap < b_p:
            return _option.Verdict.LESS
        if b_p + gap < a_p:
            return _option.Verdict.GREATER
    return _option.Verdict.UNKNOWN


def creal_sqrt(q: Fraction) -> CReal:
    """Returns the computable square root of a non-negative rational"""
    q = Fraction(q)
    if q < 0:
        raise ValueError('square root of a negative rational')

    def sqrt_approx(k: int) -> Fraction:
        m = k + 1
        a = _math.isqrt(_math.floor(q * 4 ** m))
        # sqrt(q) lies in [a, a + 1) / 2^m, return the midpoint
        return Fraction(2 * a + 1, 1 << (m + 1))

    return CReal(sqrt_approx, label=f'sqrt({_util.Text.format_rational(q)})')


def _round_dyadic(q: Fraction, bits: int) -> Fraction:
    """Rounds to the nearest multiple of 2^(-bits)"""
    return Fraction(round(q * (1 << bits)), 1 << bits)


def _arctan_series(q: Fraction, k: int) -> Fraction:
    """Alternating Taylor series of arctan for |q| <= 1/2"""
    bits = k + 2
    tolerance = _util.dyadic(bits)
    q_squared = q * q
    power = q
    total = Fraction(0)
    n = 0
    while abs(power) / (2 * n + 1) > tolerance:
        term = power / (2 * n + 1)
        total = total - term if n % 2 else total + term
        power *= q_squared
        n += 1
    return _round_dyadic(total, bits + 1)


def _pi_approx(k: int) -> Fraction:
    # Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)
    return (16 * _arctan_series(Fraction(1, 5), k + 5)
            - 4 * _arctan_series(Fraction(1, 239), k + 3))


PI = CReal(_pi_approx, label='pi')


def creal_pi() -> CReal:
    """Returns the computable real pi"""
    return PI


def arctan_rational(q: Fraction, k: int) -> Fraction:
    """Returns a rational within 2^(-k) of arctan(q)"""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    if q < 0:
        return -arctan_rational(-q, k)
    if q > 1:
        return PI.approx(k + 2) / 2 - arctan_rational(1 / q, k + 1)
    if q > Fraction(1, 2):
        reduced = (q - Fraction(1, 2)) / (1 + q / 2)
        return (_arctan_series(Fraction(1, 2), k + 1)
                + _arctan_series(reduced, k + 1))
    return _arctan_series(q, k)


def creal_arctan(x: CReal) -> CReal:
    """Returns the computable arctangent of x (arctan is 1-Lipschitz)"""
    return CReal(lambda k: arctan_rational(x.approx(k + 1), k + 1),
                 label=f'arctan({x.label})')


def _exact_or_none(a: CReal, b: CReal, op) -> Optional[Fraction]:
    if a.exact is None or b.exact is None:
        return None
    return op(a.exact, b.exact)
