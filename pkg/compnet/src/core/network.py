"""A module for exact-parameter neural networks and their realizations"""
import json as _json
import logging as _logging
import random as _random
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from compnet.src.core import (error as _error, fields as _fields,
                              option as _option, util as _util)
from compnet.src.core.exact_real import (CReal, CRealVector,
                                         arctan_rational as _arctan_rational)

_logger = _logging.getLogger(__name__)

Vector = Sequence[Fraction]
Matrix = Sequence[Sequence[Fraction]]
Layer = Tuple[Tuple[Tuple[Fraction, ...], ...], Tuple[Fraction, ...]]


class Architecture(tuple):
    """The layer widths (N0, N1, ..., NL) of a network with NL = 1"""

    def __new__(cls, dims: Sequence[int]):
        try:
            dims = tuple(int(n) for n in dims)
        except (TypeError, ValueError):
            raise _error.InvalidArchitectureError(reason=str(dims))

        if len(dims) < 2:
            raise _error.InvalidArchitectureError(dims, 'depth must be >= 1')
        if any(n < 1 for n in dims):
            raise _error.InvalidArchitectureError(dims, 'widths must be >= 1')
        if dims[-1] != 1:
            raise _error.InvalidArchitectureError(dims, 'output width must be 1')
        return super().__new__(cls, dims)

    @property
    def depth(self) -> int:
        """the number of affine layers L"""
        return len(self) - 1

    @property
    def input_dim(self) -> int:
        """the input dimension N0"""
        return self[0]

    @property
    def param_count(self) -> int:
        """N(S), counting every weight and bias entry"""
        return sum(self[i] * self[i - 1] + self[i] for i in range(1, len(self)))

    @property
    def free_param_count(self) -> int:
        """N(S) - 1; the final bias is fixed at zero"""
        return self.param_count - 1

    def layer_shapes(self) -> List[Tuple[int, int]]:
        """Returns (rows, columns) of every weight matrix"""
        return [(self[i], self[i - 1]) for i in range(1, len(self))]

    def weight_mask(self) -> List[bool]:
        """Flags the free parameters that are weight-matrix entries"""
        mask = []
        for index, (rows, cols) in enumerate(self.layer_shapes()):
            mask += [True] * (rows * cols)
            if index < self.depth - 1:
                mask += [False] * rows
        return mask


class Activation:
    """An activation function with its exactness flags and Lipschitz constant.

    ``eval_interval(center, radius, k)`` returns v with
    |sigma(u) - v| <= lipschitz_constant * radius + 2^(-k)
    for every |u - center| <= radius.
    """

    def __init__(self, name: str, lipschitz_constant: Fraction,
                 eval_rational: Optional[Callable[[Fraction], Fraction]],
                 eval_interval: Callable[[Fraction, Fraction, int], Fraction],
                 exact_on_integers: bool = False):
        self.name = name
        self.lipschitz_constant = Fraction(lipschitz_constant)
        self._eval_rational = eval_rational
        self._eval_interval = eval_interval
        self.exact_on_integers = exact_on_integers

    def __repr__(self) -> str:
        return f'Activation<{self.name}>'

    @property
    def exact_on_rationals(self) -> bool:
        """True if the activation maps rationals to rationals exactly"""
        return self._eval_rational is not None

    def eval_rational(self, u: Fraction) -> Fraction:
        """Exact value at a rational point"""
        if self._eval_rational is None:
            raise _error.InexactActivationError(self.name)
        return self._eval_rational(u)

    def eval_interval(self, center: Fraction, radius: Fraction,
                      k: int) -> Fraction:
        """Approximate value for an input known to lie within radius of
        center"""
        return self._eval_interval(center, radius, k)


def _relu(u):
    return u if u > 0 else 0 * u


def _hard_sigmoid(u):
    return min(Fraction(1), max(Fraction(0), Fraction(u) / 4 + Fraction(1, 2)))


def relu() -> Activation:
    """max(0, u)"""
    return Activation(_option.Activation.RELU, Fraction(1), _relu,
                      lambda c, r, k: _relu(c), exact_on_integers=True)


def leaky_relu(slope: Fraction = Fraction(1, 100)) -> Activation:
    """u for u >= 0 and slope * u otherwise"""
    slope = Fraction(slope)
    if slope <= 0:
        raise _error.UnknownActivationError(
            f'{_option.Activation.LEAKY_RELU}:{slope}')

    def leaky(u):
        return u if u >= 0 else slope * u

    name = (f'{_option.Activation.LEAKY_RELU}:'
            f'{_util.Text.format_rational(slope)}')
    return Activation(name, max(Fraction(1), slope), leaky,
                      lambda c, r, k: leaky(c),
                      exact_on_integers=slope.denominator == 1)


def hard_sigmoid() -> Activation:
    """clamp(u/4 + 1/2, 0, 1), a piecewise-linear sigmoid surrogate"""
    return Activation(_option.Activation.HARD_SIGMOID, Fraction(1, 4),
                      _hard_sigmoid, lambda c, r, k: _hard_sigmoid(c))


def atan() -> Activation:
    """arctan, usable on the interval path only"""
    return Activation(_option.Activation.ATAN, Fraction(1), None,
                      lambda c, r, k: _arctan_rational(c, k))


def get_activation(name: str) -> Activation:
    """Returns the shipped activation with the given name. Leaky ReLU
    takes its slope after a colon, e.g. "leaky_relu:1/10"."""
    if not _option.is_valid_activation(name):
        raise _error.UnknownActivationError(name)

    base, _, argument = name.partition(':')
    if base == _option.Activation.LEAKY_RELU:
        if not argument:
            return leaky_relu()
        try:
            return leaky_relu(_util.Text.parse_rational(argument))
        except _error.InvalidRationalError:
            raise _error.UnknownActivationError(name)
    if argument:
        raise _error.UnknownActivationError(name)

    factories = {_option.Activation.RELU: relu,
                 _option.Activation.HARD_SIGMOID: hard_sigmoid,
                 _option.Activation.ATAN: atan}
    return factories[base]()


class Network:
    """An architecture with exact rational weights and biases"""

    def __init__(self, architecture: Sequence[int],
                 layers: Sequence[Tuple[Matrix, Vector]]):
        self._architecture = Architecture(architecture)
        shapes = self._architecture.layer_shapes()
        if len(layers) != len(shapes):
            raise _error.ShapeMismatchError(len(shapes), len(layers))

        checked = []
        for (rows, cols), (matrix, bias) in zip(shapes, layers):
            if len(matrix) != rows:
                raise _error.ShapeMismatchError(rows, len(matrix))
            for row in matrix:
                if len(row) != cols:
                    raise _error.ShapeMismatchError(cols, len(row))
            if len(bias) != rows:
                raise _error.ShapeMismatchError(rows, len(bias))
            checked.append((tuple(tuple(Fraction(a) for a in row)
                                  for row in matrix),
                            tuple(Fraction(b) for b in bias)))

        if any(checked[-1][1]):
            raise _error.NonzeroFinalBiasError()
        self._layers: Tuple[Layer, ...] = tuple(checked)

    def __repr__(self) -> str:
        return f'Network<{",".join(str(n) for n in self._architecture)}>'

    def __eq__(self, o: object) -> bool:
        return isinstance(o, Network) \
            and self._architecture == o._architecture \
            and self._layers == o._layers

    def __ne__(self, o: object) -> bool:
        return not self.__eq__(o)

    def __hash__(self) -> int:
        return hash((self._architecture, self._layers))

    @property
    def architecture(self) -> Architecture:
        return self._architecture

    @property
    def layers(self) -> Tuple[Layer, ...]:
        return self._layers

    @property
    def is_integer(self) -> bool:
        """True if every parameter has denominator 1"""
        return all(p.denominator == 1 for p in self.parameters())

    def parameters(self) -> List[Fraction]:
        """The free parameters, layer-major and row-major with weights before
        biases. The final bias is left out."""
        params = []
        for index, (matrix, bias) in enumerate(self._layers):
            for row in matrix:
                params.extend(row)
            if index < len(self._layers) - 1:
                params.extend(bias)
        return params


def network_from_parameters(architecture: Sequence[int],
                            params: Sequence[Fraction]) -> Network:
    """Inverse of Network.parameters"""
    architecture = Architecture(architecture)
    if len(params) != architecture.free_param_count:
        raise _error.ShapeMismatchError(architecture.free_param_count,
                                        len(params))
    layers = []
    position = 0
    for index, (rows, cols) in enumerate(architecture.layer_shapes()):
        matrix = [params[position + r * cols:position + (r + 1) * cols]
                  for r in range(rows)]
        position += rows * cols
        if index < architecture.depth - 1:
            bias = params[position:position + rows]
            position += rows
        else:
            bias = [0] * rows
        layers.append((matrix, bias))
    return Network(architecture, layers)


def zero_network(architecture: Sequence[int]) -> Network:
    """Returns the network whose parameters are all zero"""
    architecture = Architecture(architecture)
    return network_from_parameters(architecture,
                                   [0] * architecture.free_param_count)


def _affine(matrix, bias, x):
    return [sum((a * v for a, v in zip(row, x)), b)
            for row, b in zip(matrix, bias)]


def propagate(layers: Sequence[Tuple[Matrix, Vector]], act: Activation,
              x: Vector) -> list:
    """Applies affine map then activation for each of the given layers"""
    for matrix, bias in layers:
        x = [act.eval_rational(u) for u in _affine(matrix, bias, x)]
    return x


def realize(net: Network, act: Activation, x: Vector) -> Fraction:
    """Exact value of the realization at a rational point"""
    if len(x) != net.architecture.input_dim:
        raise _error.ShapeMismatchError(net.architecture.input_dim, len(x))
    if not act.exact_on_rationals:
        raise _error.InexactActivationError(act.name)

    hidden = propagate(net.layers[:-1], act, [Fraction(v) for v in x])
    matrix, bias = net.layers[-1]
    return Fraction(_affine(matrix, bias, hidden)[0])


def _max_row_sum(matrix) -> Fraction:
    return max(sum((abs(a) for a in row), Fraction(0)) for row in matrix)


def _error_budget(net: Network, act: Activation, p: int) -> Fraction:
    """Worst-case output error when inputs are known to 2^(-p) and every
    activation is evaluated at precision p"""
    err = _util.dyadic(p)
    for index, (matrix, _) in enumerate(net.layers):
        err = _max_row_sum(matrix) * err
        if index < len(net.layers) - 1:
            err = act.lipschitz_constant * err + _util.dyadic(p)
    return err


def realize_creal(net: Network, act: Activation, x: CRealVector,
                  k: int) -> Fraction:
    """Returns a rational within 2^(-k) of the realization at a computable
    point"""
    if x.dimension != net.architecture.input_dim:
        raise _error.ShapeMismatchError(net.architecture.input_dim,
                                        x.dimension)
    target = _util.dyadic(k)
    p = k + 1
    budget = _error_budget(net, act, p)
    while budget > target:
        p += 1 + _util.ceil_log2(budget / target)
        budget = _error_budget(net, act, p)

    values = x.approx(p)
    err = _util.dyadic(p)
    for index, (matrix, bias) in enumerate(net.layers):
        values = _affine(matrix, bias, values)
        err = _max_row_sum(matrix) * err
        if index < len(net.layers) - 1:
            values = [act.eval_interval(u, err, p) for u in values]
            err = act.lipschitz_constant * err + _util.dyadic(p)
    return Fraction(values[0])


def realize_as_creal(net: Network, act: Activation, x: CRealVector) -> CReal:
    """The realization at a computable point, as a computable real"""
    return CReal(lambda k: realize_creal(net, act, x, k),
                 label=f'{net!r}({x!r})')


def scaling_norm(net: Network) -> Fraction:
    """The largest absolute weight-matrix entry; biases are excluded"""
    return max((abs(a) for matrix, _ in net.layers
                for row in matrix for a in row), default=Fraction(0))


def _width_factors(architecture: Architecture, sqrt_precision: int):
    return [_util.sqrt_upper_bound(rows * cols, sqrt_precision)
            for rows, cols in architecture.layer_shapes()]


def lipschitz_bound(net: Network, act: Activation,
                    sqrt_precision: int = _util.SQRT_PRECISION) -> Fraction:
    """A certified upper bound on the Euclidean Lipschitz constant of the
    realization: Lip(act)^(L-1) times the product over layers of
    sqrt(N_l N_(l-1)) rounded up and the layer's largest entry"""
    bound = act.lipschitz_constant ** (net.architecture.depth - 1)
    factors = _width_factors(net.architecture, sqrt_precision)
    for factor, (matrix, _) in zip(factors, net.layers):
        bound *= factor * max(abs(a) for row in matrix for a in row)
    return Fraction(bound)


def admissible_lipschitz_bound(architecture: Sequence[int], act: Activation,
                               a_max: Fraction,
                               sqrt_precision: int = _util.SQRT_PRECISION) \
        -> Fraction:
    """lipschitz_bound maximized over networks with scaling norm <= a_max"""
    architecture = Architecture(architecture)
    bound = act.lipschitz_constant ** (architecture.depth - 1)
    for factor in _width_factors(architecture, sqrt_precision):
        bound *= factor * Fraction(a_max)
    return Fraction(bound)


class Dataset(dict):
    """A dict-like object holding exact (input, label) pairs"""

    def __init__(self, pairs: Sequence[Tuple[Vector, Fraction]],
                 d: Optional[int] = None):
        super().__init__()
        pairs = [(tuple(Fraction(v) for v in x), Fraction(y))
                 for x, y in pairs]
        if d is None:
            if not pairs:
                raise _error.InvalidDatasetError('empty dataset needs d')
            d = len(pairs[0][0])
        if d < 1:
            raise _error.InvalidDatasetError('input dimension must be >= 1')
        for x, _ in pairs:
            if len(x) != d:
                raise _error.InvalidDatasetError(
                    f'input {list(map(str, x))} does not have dimension {d}')

        self[_fields.Dataset.DIMENSION] = d
        self[_fields.Dataset.PAIRS] = pairs

    def __str__(self) -> str:
        return self.to_json()

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, o: object) -> bool:
        return isinstance(o, Dataset) and self.d == o.d \
            and self.pairs == o.pairs

    def __ne__(self, o: object) -> bool:
        return not self.__eq__(o)

    @property
    def d(self) -> int:
        """the input dimension"""
        return self[_fields.Dataset.DIMENSION]

    @property
    def pairs(self) -> List[Tuple[Tuple[Fraction, ...], Fraction]]:
        """the (input, label) pairs"""
        return self[_fields.Dataset.PAIRS]

    @property
    def inputs(self) -> List[Tuple[Fraction, ...]]:
        return [x for x, _ in self.pairs]

    @property
    def labels(self) -> List[Fraction]:
        return [y for _, y in self.pairs]

    @property
    def is_integer(self) -> bool:
        """True if every input entry and label is an integer"""
        return all(v.denominator == 1 for x, y in self.pairs
                   for v in (*x, y))

    def to_document(self) -> dict:
        fmt = _util.Text.format_rational
        return {_fields.Dataset.DIMENSION: self.d,
                _fields.Dataset.PAIRS: [{_fields.Dataset.INPUT:
                                         [fmt(v) for v in x],
                                         _fields.Dataset.LABEL: fmt(y)}
                                        for x, y in self.pairs]}

    def to_json(self) -> str:
        """Returns the dataset as a JSON string"""
        return _util.to_json(self.to_document())


def dataset_from_document(document: dict) -> Dataset:
    """Reads {d, pairs: [{x: ["p/q", ...], y: "p/q"}]}"""
    parse = _util.Text.parse_rational
    try:
        pairs = [([parse(v) for v in pair[_fields.Dataset.INPUT]],
                  parse(pair[_fields.Dataset.LABEL]))
                 for pair in document[_fields.Dataset.PAIRS]]
        d = int(document[_fields.Dataset.DIMENSION])
    except (KeyError, TypeError, ValueError) as err:
        raise _error.InvalidDatasetError(f'malformed dataset: {err}') from err
    return Dataset(pairs, d)


def make_dataset(net: Network, act: Activation,
                 inputs: Sequence[Vector]) -> Dataset:
    """Labels every input with the exact realization"""
    return Dataset([(x, realize(net, act, x)) for x in inputs],
                   net.architecture.input_dim)


def sample_generalization_ball(net: Network, act: Activation,
                               dataset: Dataset, radius: Fraction,
                               samples_per_point: int,
                               seed: int) -> Dataset:
    """Seeded rational samples within Euclidean distance radius of the
    dataset inputs, labeled by the exact realization of net"""
    radius = Fraction(radius)
    if radius < 0:
        raise _error.InvalidConfigError('radius must be non-negative')
    if dataset.d != net.architecture.input_dim:
        raise _error.ShapeMismatchError(net.architecture.input_dim, dataset.d)

    rng = _random.Random(seed)
    points = []
    for x in dataset.inputs:
        for _ in range(samples_per_point):
            if radius == 0:
                points.append(x)
                continue
            direction = [0] * dataset.d
            while not any(direction):
                direction = [rng.randint(-8, 8) for _ in range(dataset.d)]
            norm_ub = _util.sqrt_upper_bound(sum(u * u for u in direction))
            step = radius * Fraction(rng.randint(0, 16), 16) / norm_ub
            points.append([v + step * u for v, u in zip(x, direction)])
    return make_dataset(net, act, points)


def network_to_document(net: Network, act: Activation) -> dict:
    """Renders {architecture, layers: [{A, b}], activation} with A flattened
    row-major"""
    fmt = _util.Text.format_rational
    return {_fields.Network.ARCHITECTURE: list(net.architecture),
            _fields.Network.LAYERS: [{_fields.Network.WEIGHTS:
                                      [fmt(a) for row in matrix for a in row],
                                      _fields.Network.BIAS:
                                      [fmt(b) for b in bias]}
                                     for matrix, bias in net.layers],
            _fields.Network.ACTIVATION: act.name}


def network_from_document(document: dict) -> Tuple[Network, Activation]:
    """Reads a network document, returning the network and its activation"""
    parse = _util.Text.parse_rational
    try:
        architecture = Architecture(document[_fields.Network.ARCHITECTURE])
        layer_documents = document[_fields.Network.LAYERS]
        activation_name = document.get(_fields.Network.ACTIVATION,
                                       _option.Activation.RELU)
        shapes = architecture.layer_shapes()
        if len(layer_documents) != len(shapes):
            raise _error.ShapeMismatchError(len(shapes), len(layer_documents))

        layers = []
        for (rows, cols), layer in zip(shapes, layer_documents):
            flat = [parse(a) for a in layer[_fields.Network.WEIGHTS]]
            if len(flat) != rows * cols:
                raise _error.ShapeMismatchError(rows * cols, len(flat))
            matrix = [flat[r * cols:(r + 1) * cols] for r in range(rows)]
            bias = [parse(b) for b in layer[_fields.Network.BIAS]]
            layers.append((matrix, bias))
    except (KeyError, TypeError, AttributeError) as err:
        raise _error.InvalidNetworkError(f'malformed network: {err}') from err
    return Network(architecture, layers), get_activation(activation_name)


def load_network(path: str) -> Tuple[Network, Activation]:
    """Reads a network document from disk"""
    with open(path, 'r') as network_file:
        return network_from_document(_json.load(network_file))


def load_dataset(path: str) -> Dataset:
    """Reads a dataset document from disk"""
    with open(path, 'r') as dataset_file:
        return dataset_from_document(_json.load(dataset_file))
