"""A module for semi-deciders, dovetailed classification and exit flags.

A semi-decider answers ACCEPT only when membership is certified and UNKNOWN
otherwise; it never rejects. Fuel t allows the first t enumerated objects and
precisions up to t, so an ACCEPT at fuel t persists at every larger fuel.
"""
import json as _json
import logging as _logging
import math as _math
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from compnet.src.core import (error as _error, fields as _fields,
                              option as _option, util as _util)
from compnet.src.core.exact_real import (CReal, CRealVector, creal_abs,
                                         creal_arctan, creal_compare,
                                         creal_from_rational, creal_scale,
                                         creal_sub, creal_pi)

_logger = _logging.getLogger(__name__)

QueryFunc = Callable[[CRealVector, int], str]
Ball = Tuple[Tuple[Fraction, ...], Fraction]


class SemiDecider:
    """A fuel-indexed acceptance procedure"""

    def __init__(self, query: QueryFunc, label: str = 'semidecider'):
        self._query = query
        self.label = label

    def __repr__(self) -> str:
        return f'SemiDecider<{self.label}>'

    def __call__(self, x: CRealVector, fuel: int) -> str:
        return self.query(x, fuel)

    def query(self, x: CRealVector, fuel: int) -> str:
        """Returns ACCEPT or UNKNOWN"""
        if fuel < 1:
            raise ValueError('fuel must be positive')
        return self._query(x, fuel)


class BallUnion:
    """An enumerable union of open rational balls. ``ball(k)`` returns the
    k-th (1-based) center and radius."""

    def __init__(self, ball_func: Callable[[int], Ball],
                 count: Optional[int] = None):
        self._ball_func = ball_func
        self.count = count

    def __repr__(self) -> str:
        size = 'stream' if self.count is None else self.count
        return f'BallUnion<{size}>'

    def ball(self, k: int) -> Ball:
        center, radius = self._ball_func(k)
        if radius <= 0:
            raise _error.InvalidConfigError('ball radii must be positive')
        return tuple(Fraction(c) for c in center), Fraction(radius)

    def enumerated(self, t: int) -> int:
        """Number of balls visible at fuel t"""
        return t if self.count is None else min(t, self.count)


def finite_ball_union(balls: Sequence[Tuple[Sequence[Fraction], Fraction]]) \
        -> BallUnion:
    """Wraps a finite list of (center, radius) pairs"""
    balls = [(tuple(Fraction(c) for c in center), Fraction(radius))
             for center, radius in balls]
    if not balls:
        raise _error.InvalidConfigError('a ball union needs at least one ball')
    if any(radius <= 0 for _, radius in balls):
        raise _error.InvalidConfigError('ball radii must be positive')
    if len({len(center) for center, _ in balls}) != 1:
        raise _error.InvalidConfigError('ball centers differ in dimension')
    return BallUnion(lambda k: balls[k - 1], len(balls))


def ball_union_from_document(document: dict) -> BallUnion:
    """Reads {balls: [{c: ["p/q", ...], r: "p/q"}]}"""
    parse = _util.Text.parse_rational
    try:
        balls = [([parse(c) for c in ball[_fields.BallUnion.CENTER]],
                  parse(ball[_fields.BallUnion.RADIUS]))
                 for ball in document[_fields.BallUnion.BALLS]]
    except (KeyError, TypeError) as err:
        raise _error.InvalidConfigError(f'malformed ball union: {err}') \
            from err
    return finite_ball_union(balls)


def ball_union_to_document(union: BallUnion) -> dict:
    """Renders a finite ball union"""
    if union.count is None:
        raise _error.InvalidConfigError('streaming unions have no document')
    fmt = _util.Text.format_rational
    balls = [union.ball(k) for k in range(1, union.count + 1)]
    return {_fields.BallUnion.BALLS: [{_fields.BallUnion.CENTER:
                                       [fmt(c) for c in center],
                                       _fields.BallUnion.RADIUS: fmt(radius)}
                                      for center, radius in balls]}


def load_ball_union(path: str) -> BallUnion:
    """Reads a ball union document from disk"""
    with open(path, 'r') as union_file:
        return ball_union_from_document(_json.load(union_file))


def ball_union_semidecider(union: BallUnion) -> SemiDecider:
    """Accepts x once some ball k <= t certifiably contains it: with
    delta = 2^(-p) sqrt(d) rounded up, |x_p - c|^2 < (r - delta)^2 for some
    precision p <= t"""
    def query(x: CRealVector, fuel: int) -> str:
        sqrt_d = _util.sqrt_upper_bound(x.dimension)
        balls = [union.ball(k) for k in range(1, union.enumerated(fuel) + 1)]
        for center, _ in balls:
            if len(center) != x.dimension:
                raise _error.ShapeMismatchError(len(center), x.dimension)
        for p in range(1, fuel + 1):
            approx = x.approx(p)
            delta = _util.dyadic(p) * sqrt_d
            for center, radius in balls:
                margin = radius - delta
                if margin > 0 and \
                        _util.squared_distance(approx, center) < margin ** 2:
                    return _option.Verdict.ACCEPT
        return _option.Verdict.UNKNOWN

    return SemiDecider(query, label=repr(union))


class ClassVerdict(dict):
    """A dict-like object holding the outcome of a dovetailed query"""

    def __init__(self, verdict: str, class_index: Optional[int],
                 fuel_used: int):
        super().__init__()
        self[_fields.ClassVerdict.VERDICT] = verdict
        self[_fields.ClassVerdict.CLASS_INDEX] = class_index
        self[_fields.ClassVerdict.FUEL_USED] = fuel_used

    def __str__(self) -> str:
        return self.to_json()

    @property
    def verdict(self) -> str:
        return self[_fields.ClassVerdict.VERDICT]

    @property
    def class_index(self) -> Optional[int]:
        """1-based index of the accepting class"""
        return self[_fields.ClassVerdict.CLASS_INDEX]

    @property
    def fuel_used(self) -> int:
        """fuel granted to every class when the query returned"""
        return self[_fields.ClassVerdict.FUEL_USED]

    def to_json(self) -> str:
        """Returns the verdict as a JSON string"""
        return _util.to_json(dict(self))


def dovetail_classify(classes: Sequence[SemiDecider], x: CRealVector,
                      fuel: int) -> ClassVerdict:
    """Round t grants every class fuel t. Returns the class that accepts
    first, or UNKNOWN once the fuel is spent."""
    if fuel < 1:
        raise ValueError('fuel must be positive')
    for t in range(1, fuel + 1):
        accepted = [index for index, decider in enumerate(classes, 1)
                    if decider.query(x, t) == _option.Verdict.ACCEPT]
        if len(accepted) > 1:
            raise _error.AmbiguousAcceptError(accepted)
        if accepted:
            _logger.debug('class %d accepted in round %d', accepted[0], t)
            return ClassVerdict(_option.Verdict.ACCEPT, accepted[0], t)
    return ClassVerdict(_option.Verdict.UNKNOWN, None, fuel)


def _exit_flag_target(epsilon: Fraction) -> CReal:
    # arctan(x0) = pi (1 - eps) / 2
    return creal_scale(creal_pi(), (1 - epsilon) / 2)


def exit_flag_threshold(epsilon: Fraction,
                        precision: int = _util.EXIT_FLAG_PRECISION) \
        -> Fraction:
    """A certified rational upper bound on x0 = tan(pi (1 - eps) / 2),
    found by bisection on arctan"""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise _error.InvalidConfigError('epsilon must lie in (0, 1)')
    target = _exit_flag_target(epsilon)
    fuel = precision + 8

    def above(q: Fraction) -> bool:
        value = creal_arctan(creal_from_rational(q))
        return creal_compare(value, target, fuel) == _option.Verdict.GREATER

    lo, hi = Fraction(0), Fraction(1)
    while not above(hi):
        lo, hi = hi, 2 * hi
    for _ in range(precision):
        mid = (lo + hi) / 2
        if above(mid):
            hi = mid
        else:
            lo = mid
    _logger.debug('exit flag threshold for %s is %s',
                  _util.Text.format_rational(epsilon),
                  _util.Text.format_rational(hi))
    return hi


def exit_flag_semidecider(epsilon: Fraction,
                          threshold: Optional[Fraction] = None) -> SemiDecider:
    """Accepts x with |x| certifiably above the threshold, i.e. the points
    where |sgn(x) - (2/pi) arctan(x)| < eps. A precomputed threshold must be
    an upper bound from exit_flag_threshold."""
    if threshold is None:
        threshold = exit_flag_threshold(epsilon)
    threshold = creal_from_rational(threshold)

    def query(x: CRealVector, fuel: int) -> str:
        if x.dimension != 1:
            raise _error.ShapeMismatchError(1, x.dimension)
        verdict = creal_compare(creal_abs(x[0]), threshold, fuel)
        if verdict == _option.Verdict.GREATER:
            return _option.Verdict.ACCEPT
        return _option.Verdict.UNKNOWN

    return SemiDecider(query, label=f'exitflag({epsilon})')


def classifier_semidecider(classifier: Callable[[CRealVector], CReal],
                           index: int) -> SemiDecider:
    """Accepts x once the computable classifier output is certified within
    1/2 of the class index"""
    target = creal_from_rational(Fraction(index))
    half = creal_from_rational(Fraction(1, 2))

    def query(x: CRealVector, fuel: int) -> str:
        gap = creal_abs(creal_sub(classifier(x), target))
        if creal_compare(gap, half, fuel) == _option.Verdict.LESS:
            return _option.Verdict.ACCEPT
        return _option.Verdict.UNKNOWN

    return SemiDecider(query, label=f'class {index}')


def certified_round(x: CReal, fuel: int) -> Optional[int]:
    """ceil(x - 1/2) once a precision p <= fuel pins it down, None otherwise.
    Half-integers are never certified."""
    half = Fraction(1, 2)
    for p in range(fuel + 1):
        center, err = x.approx(p), _util.dyadic(p)
        low = _math.ceil(center - err - half)
        if low == _math.ceil(center + err - half):
            return low
    return None


class FiniteClassifier:
    """An exact lookup classifier over a finite integer domain"""

    def __init__(self, table: Dict[Tuple[int, ...], int]):
        self._table = table

    def __call__(self, x: Sequence[int]) -> int:
        key = tuple(int(v) for v in x)
        try:
            return self._table[key]
        except KeyError:
            raise _error.DomainError(key)

    def __len__(self) -> int:
        return len(self._table)

    @property
    def domain(self) -> List[Tuple[int, ...]]:
        return list(self._table)


def compile_finite_classifier(table: Sequence[Tuple[Sequence[int], int]]) \
        -> FiniteClassifier:
    """Compiles (input, class) pairs into a total lookup on their domain"""
    lookup: Dict[Tuple[int, ...], int] = {}
    for x, label in table:
        key = tuple(int(v) for v in x)
        if key in lookup:
            raise _error.DuplicateKeyError(key)
        if int(label) != label or label < 1:
            raise _error.InvalidConfigError(f'{label} is not a class index')
        lookup[key] = int(label)
    return FiniteClassifier(lookup)


class SeparationReport(dict):
    """A dict-like object holding the result of a class separation audit"""

    def __init__(self, min_distance_squared: Fraction,
                 closest_pair: Tuple[tuple, tuple], threshold: Fraction):
        super().__init__()
        self[_fields.SeparationReport.MIN_DISTANCE_SQUARED] = \
            min_distance_squared
        self[_fields.SeparationReport.CLOSEST_PAIR] = closest_pair
        self[_fields.SeparationReport.THRESHOLD] = threshold
        self[_fields.SeparationReport.BELOW_THRESHOLD] = \
            min_distance_squared < threshold

    @property
    def min_distance_squared(self) -> Fraction:
        return self[_fields.SeparationReport.MIN_DISTANCE_SQUARED]

    @property
    def closest_pair(self) -> Tuple[tuple, tuple]:
        return self[_fields.SeparationReport.CLOSEST_PAIR]

    @property
    def threshold(self) -> Fraction:
        return self[_fields.SeparationReport.THRESHOLD]

    @property
    def below_threshold(self) -> bool:
        """warning flag: the classes come closer than the threshold"""
        return self[_fields.SeparationReport.BELOW_THRESHOLD]

    def to_json(self) -> str:
        fmt = _util.Text.format_rational
        first, second = self.closest_pair
        return _util.to_json({
            _fields.SeparationReport.MIN_DISTANCE_SQUARED:
                fmt(self.min_distance_squared),
            _fields.SeparationReport.CLOSEST_PAIR:
                [[fmt(v) for v in first], [fmt(v) for v in second]],
            _fields.SeparationReport.THRESHOLD: fmt(self.threshold),
            _fields.SeparationReport.BELOW_THRESHOLD: self.below_threshold})


def class_separation_audit(samples: Sequence[Tuple[Sequence[Fraction], int]],
                           threshold: Fraction = Fraction(1, 100)) \
        -> SeparationReport:
    """Exact minimum squared distance between samples of distinct classes"""
    samples = [(tuple(Fraction(v) for v in x), label) for x, label in samples]
    if len({label for _, label in samples}) < 2:
        raise _error.InsufficientClassesError()

    best = None
    pair = None
    for i, (x, label) in enumerate(samples):
        for y, other in samples[i + 1:]:
            if label == other:
                continue
            distance = _util.squared_distance(x, y)
            if best is None or distance < best:
                best, pair = distance, (x, y)

    report = SeparationReport(best, pair, Fraction(threshold))
    if report.below_threshold:
        _logger.warning('classes come within squared distance %s',
                        _util.Text.format_rational(best))
    return report
