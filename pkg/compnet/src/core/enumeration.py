"""A module for enumerating integer and rational networks and for the
recursively invertible integer encoding of parameter vectors.

Parameter vectors are ordered by shells. The size of an integer is its
absolute value; the size of a nonzero rational p/q is max(|p|, q) and zero has
size 0. Shell s holds the vectors whose largest entry size is exactly s, in
lexicographic order over the ascending values of size <= s.
"""
import functools as _functools
import itertools as _itertools
import logging as _logging
import math as _math
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from compnet.src.core import (error as _error, fields as _fields,
                              option as _option, util as _util)
from compnet.src.core.network import (Architecture, Network,
                                      network_from_parameters)

_logger = _logging.getLogger(__name__)


def value_size(mode: str, value: Fraction) -> int:
    """Size of a single parameter value under the given mode"""
    value = Fraction(value)
    if mode == _option.Mode.INTEGER:
        if value.denominator != 1:
            raise ValueError(f'{value} is not an integer')
        return abs(value.numerator)
    if value == 0:
        return 0
    return max(abs(value.numerator), value.denominator)


def vector_size(mode: str, params: Sequence[Fraction]) -> int:
    """Largest entry size of a parameter vector"""
    return max((value_size(mode, v) for v in params), default=0)


@_functools.lru_cache(maxsize=None)
def shell_values(mode: str, s: int) -> Tuple[Fraction, ...]:
    """Ascending values of size at most s"""
    if not _option.is_valid_mode(mode):
        raise ValueError(f'{mode} is not an enumeration mode')
    if mode == _option.Mode.INTEGER:
        return tuple(Fraction(v) for v in range(-s, s + 1))

    values = {Fraction(0)}
    for q in range(1, s + 1):
        for p in range(1, s + 1):
            if _math.gcd(p, q) == 1:
                values.add(Fraction(p, q))
                values.add(Fraction(-p, q))
    return tuple(sorted(values))


def shell_size(architecture: Sequence[int], mode: str, s: int) -> int:
    """Number of parameter vectors in shell s"""
    m = Architecture(architecture).free_param_count
    if s == 0:
        return 1
    return len(shell_values(mode, s)) ** m \
        - len(shell_values(mode, s - 1)) ** m


def completion_count(remaining: int, outer: int, inner: int,
                 has_top: bool) -> int:
    """Number of ways to fill the remaining coordinates so that the vector
    reaches the top size"""
    if has_top:
        return outer ** remaining
    return outer ** remaining - inner ** remaining


def _unrank_in_shell(mode: str, m: int, s: int,
                     position: int) -> List[Fraction]:
    values = shell_values(mode, s)
    outer = len(values)
    inner = len(shell_values(mode, s - 1)) if s else 0
    vector = []
    has_top = s == 0
    for i in range(m):
        for v in values:
            top = has_top or value_size(mode, v) == s
            count = completion_count(m - i - 1, outer, inner, top)
            if position < count:
                vector.append(v)
                has_top = top
                break
            position -= count
    return vector


def _rank_in_shell(mode: str, s: int, params: Sequence[Fraction]) -> int:
    values = shell_values(mode, s)
    outer = len(values)
    inner = len(shell_values(mode, s - 1)) if s else 0
    m = len(params)
    position = 0
    has_top = s == 0
    for i, target in enumerate(params):
        for v in values:
            top = has_top or value_size(mode, v) == s
            if v == target:
                has_top = top
                break
            position += completion_count(m - i - 1, outer, inner, top)
    return position


def network_rank(net: Network, mode: str) -> int:
    """0-based index of a network in the enumeration order"""
    params = net.parameters()
    s = vector_size(mode, params)
    offset = sum(shell_size(net.architecture, mode, t) for t in range(s))
    return offset + _rank_in_shell(mode, s, params)


def unrank_network(architecture: Sequence[int], mode: str,
                   index: int) -> Network:
    """The network at a 0-based index of the enumeration order"""
    if index < 0:
        raise ValueError('index must be non-negative')
    architecture = Architecture(architecture)
    s = 0
    while index >= shell_size(architecture, mode, s):
        index -= shell_size(architecture, mode, s)
        s += 1
    params = _unrank_in_shell(mode, architecture.free_param_count, s, index)
    return network_from_parameters(architecture, params)


class EnumerationCursor(dict):
    """A dict-like checkpoint of a position in the enumeration order"""

    def __init__(self, architecture: Sequence[int], mode: str,
                 shell_index: int = 0, position_in_shell: int = 0):
        super().__init__()
        if not _option.is_valid_mode(mode):
            raise _error.InvalidConfigError(f'{mode} is not a mode')
        architecture = Architecture(architecture)
        if shell_index < 0 or not \
                0 <= position_in_shell < shell_size(architecture, mode,
                                                    shell_index):
            raise _error.InvalidConfigError('cursor position out of range')

        self[_fields.Cursor.ARCHITECTURE] = architecture
        self[_fields.Cursor.MODE] = mode
        self[_fields.Cursor.SHELL_INDEX] = shell_index
        self[_fields.Cursor.POSITION_IN_SHELL] = position_in_shell

    def __str__(self) -> str:
        return self.to_json()

    @property
    def architecture(self) -> Architecture:
        return self[_fields.Cursor.ARCHITECTURE]

    @property
    def mode(self) -> str:
        return self[_fields.Cursor.MODE]

    @property
    def shell_index(self) -> int:
        return self[_fields.Cursor.SHELL_INDEX]

    @property
    def position_in_shell(self) -> int:
        return self[_fields.Cursor.POSITION_IN_SHELL]

    @property
    def index(self) -> int:
        """0-based index of the next network to emit"""
        return sum(shell_size(self.architecture, self.mode, t)
                   for t in range(self.shell_index)) + self.position_in_shell

    def advanced(self) -> 'EnumerationCursor':
        """Returns the cursor one step further along"""
        position = self.position_in_shell + 1
        shell = self.shell_index
        if position == shell_size(self.architecture, self.mode, shell):
            shell, position = shell + 1, 0
        return EnumerationCursor(self.architecture, self.mode, shell, position)

    def to_document(self) -> dict:
        document = dict(self)
        document[_fields.Cursor.ARCHITECTURE] = list(self.architecture)
        return document

    def to_json(self) -> str:
        """Returns the cursor checkpoint as a JSON string"""
        return _util.to_json(self.to_document())


def cursor_from_document(document: dict) -> EnumerationCursor:
    """Resumes a cursor from its checkpoint document"""
    try:
        return EnumerationCursor(document[_fields.Cursor.ARCHITECTURE],
                                 document[_fields.Cursor.MODE],
                                 int(document[_fields.Cursor.SHELL_INDEX]),
                                 int(document[_fields.Cursor.POSITION_IN_SHELL]))
    except (KeyError, TypeError, ValueError) as err:
        raise _error.InvalidConfigError(f'malformed cursor: {err}') from err


def next_network(cursor: EnumerationCursor) \
        -> Tuple[Network, EnumerationCursor]:
    """Returns the network under the cursor and the advanced cursor"""
    params = _unrank_in_shell(cursor.mode, cursor.architecture.free_param_count,
                              cursor.shell_index, cursor.position_in_shell)
    net = network_from_parameters(cursor.architecture, params)
    return net, cursor.advanced()


def _shell_vectors(mode: str, m: int, s: int) -> Iterator[tuple]:
    values = shell_values(mode, s)
    for vector in _itertools.product(values, repeat=m):
        if vector_size(mode, vector) == s:
            yield vector


def iterate_networks(cursor: EnumerationCursor) \
        -> Iterator[Tuple[Network, EnumerationCursor]]:
    """Streams (network, advanced cursor) pairs from the cursor onwards"""
    architecture, mode = cursor.architecture, cursor.mode
    m = architecture.free_param_count
    s, skip = cursor.shell_index, cursor.position_in_shell
    while True:
        _logger.debug('enumerating shell %d of %s', s, list(architecture))
        size = shell_size(architecture, mode, s)
        vectors = _itertools.islice(_shell_vectors(mode, m, s), skip, None)
        for position, vector in enumerate(vectors, skip + 1):
            if position == size:
                advanced = EnumerationCursor(architecture, mode, s + 1, 0)
            else:
                advanced = EnumerationCursor(architecture, mode, s, position)
            yield network_from_parameters(architecture, vector), advanced
        s, skip = s + 1, 0


def zigzag_encode(z: int) -> int:
    """0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ..."""
    return 2 * z if z >= 0 else -2 * z - 1


def zigzag_decode(n: int) -> int:
    """Inverse of zigzag_encode"""
    if n < 0:
        raise ValueError('zigzag codes are non-negative')
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


def cantor_pair(a: int, b: int) -> int:
    """The Cantor pairing (a + b)(a + b + 1)/2 + b"""
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> Tuple[int, int]:
    """Inverse of cantor_pair"""
    w = (_math.isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def cantor_tuple(values: Sequence[int]) -> int:
    """Left-associated pairing of a tuple of naturals"""
    if not values:
        return 0
    return _functools.reduce(cantor_pair, values)


def cantor_untuple(code: int, length: int) -> List[int]:
    """Inverse of cantor_tuple for a known tuple length"""
    if length < 1:
        return []
    values = []
    for _ in range(length - 1):
        code, last = cantor_unpair(code)
        values.append(last)
    values.append(code)
    return values[::-1]


def godel_encode(params: Sequence[int], d: int) -> List[int]:
    """Encodes an integer parameter vector into Z^d: the Cantor code of the
    zigzagged parameters in the first coordinate, zeros elsewhere. Networks
    pass their N(S) - 1 free parameters; the zero final bias is not encoded."""
    if d < 1:
        raise ValueError('d must be at least 1')
    code = cantor_tuple([zigzag_encode(int(p)) for p in params])
    return [code] + [0] * (d - 1)


def godel_decode(x: Sequence[Fraction], length: int) -> List[int]:
    """Inverse of godel_encode for a parameter vector of the given length"""
    if not x:
        raise _error.DecodeError('empty input vector')
    first = Fraction(x[0])
    if first.denominator != 1 or first < 0:
        raise _error.DecodeError(f'{first} is not a valid code')
    if any(Fraction(v) != 0 for v in x[1:]):
        raise _error.DecodeError('trailing coordinates must be zero')
    return [zigzag_decode(n) for n in cantor_untuple(first.numerator, length)]
