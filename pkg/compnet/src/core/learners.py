"""A module for the enumeration learners.

Every learner returns the first network in enumeration order that passes its
acceptance test. Inside a shell the search runs over the hidden-layer
parameters in lexicographic order and solves the final linear layer with a
pruned depth-first search, which returns the same network a plain scan would.
"""
import itertools as _itertools
import logging as _logging
import math as _math
from fractions import Fraction
from queue import Queue
from threading import Thread
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from compnet.src.core import (enumeration as _enumeration,
                              error as _error,
                              fields as _fields,
                              network as _network,
                              option as _option,
                              util as _util)
from compnet.src.core.network import Architecture, Dataset, Network

_logger = _logging.getLogger(__name__)


class LearnerConfig(dict):
    """A dict-like object holding learner settings"""

    def __init__(self, epsilon: Fraction = Fraction(1, 16),
                 a_max: int = 1,
                 max_steps: Optional[int] = _util.DEFAULT_MAX_STEPS,
                 activation: str = _option.Activation.RELU,
                 admissible_only: bool = False):
        super().__init__()
        epsilon = Fraction(epsilon)
        if epsilon <= 0:
            raise _error.InvalidConfigError('epsilon must be positive')
        if int(a_max) != a_max or a_max < 1:
            raise _error.InvalidConfigError('a_max must be a positive integer')
        if max_steps is not None and max_steps < 1:
            raise _error.InvalidConfigError('max_steps must be positive')
        if not _option.is_valid_activation(activation):
            raise _error.UnknownActivationError(activation)

        self[_fields.LearnerConfig.EPSILON] = epsilon
        self[_fields.LearnerConfig.A_MAX] = int(a_max)
        self[_fields.LearnerConfig.MAX_STEPS] = max_steps
        self[_fields.LearnerConfig.ACTIVATION] = activation
        self[_fields.LearnerConfig.ADMISSIBLE_ONLY] = bool(admissible_only)

    @property
    def epsilon(self) -> Fraction:
        return self[_fields.LearnerConfig.EPSILON]

    @property
    def a_max(self) -> int:
        return self[_fields.LearnerConfig.A_MAX]

    @property
    def max_steps(self) -> Optional[int]:
        return self[_fields.LearnerConfig.MAX_STEPS]

    @property
    def activation(self) -> str:
        return self[_fields.LearnerConfig.ACTIVATION]

    @property
    def admissible_only(self) -> bool:
        return self[_fields.LearnerConfig.ADMISSIBLE_ONLY]

    def to_document(self) -> dict:
        document = dict(self)
        document[_fields.LearnerConfig.EPSILON] = \
            _util.Text.format_rational(self.epsilon)
        return document


class LearnReport(dict):
    """A dict-like object holding the outcome of a learner run.

    The learners never return an exhausted report: running out of budget
    raises BudgetExhaustedError, whose steps attribute lets callers record
    one with budget_exhausted set."""

    def __init__(self, learned: Optional[Network], steps: int,
                 epsilon: Fraction, mode: str,
                 activation: str = _option.Activation.RELU,
                 psi_radius: Optional[Fraction] = None,
                 budget_exhausted: bool = False):
        super().__init__()
        self._activation = activation
        self[_fields.LearnReport.LEARNED] = learned
        self[_fields.LearnReport.STEPS] = steps
        self[_fields.LearnReport.EPSILON] = Fraction(epsilon)
        self[_fields.LearnReport.PSI_RADIUS] = psi_radius
        self[_fields.LearnReport.BUDGET_EXHAUSTED] = budget_exhausted
        self[_fields.LearnReport.MODE] = mode

    def __str__(self) -> str:
        return self.to_json()

    @property
    def learned(self) -> Optional[Network]:
        """the learned network, None when the budget ran out"""
        return self[_fields.LearnReport.LEARNED]

    @property
    def steps(self) -> int:
        """enumeration steps consumed"""
        return self[_fields.LearnReport.STEPS]

    @property
    def epsilon(self) -> Fraction:
        """the published tolerance, 0 for exact learners"""
        return self[_fields.LearnReport.EPSILON]

    @property
    def psi_radius(self) -> Optional[Fraction]:
        """the certified generalization radius"""
        return self[_fields.LearnReport.PSI_RADIUS]

    @property
    def budget_exhausted(self) -> bool:
        """set by callers that caught BudgetExhaustedError"""
        return self[_fields.LearnReport.BUDGET_EXHAUSTED]

    @property
    def mode(self) -> str:
        return self[_fields.LearnReport.MODE]

    def to_document(self) -> dict:
        fmt = _util.Text.format_rational
        learned = None
        if self.learned is not None:
            learned = _network.network_to_document(
                self.learned, _network.get_activation(self._activation))
        document = {_fields.LearnReport.LEARNED: learned,
                    _fields.LearnReport.STEPS: self.steps,
                    _fields.LearnReport.EPSILON: fmt(self.epsilon),
                    _fields.LearnReport.BUDGET_EXHAUSTED:
                        self.budget_exhausted,
                    _fields.LearnReport.MODE: self.mode}
        if self.psi_radius is not None:
            document[_fields.LearnReport.PSI_RADIUS] = fmt(self.psi_radius)
        return document

    def to_json(self) -> str:
        """Returns the report as a JSON string"""
        return _util.to_json(self.to_document())


# Helper Types

LearnFunc = Callable[[Dataset], LearnReport]


def check_consistency(dataset: Dataset,
                      tolerance: Optional[Fraction] = None) -> None:
    """Raises InconsistentDataError when a repeated input carries labels that
    differ by tolerance or more (any difference when tolerance is None)"""
    seen: Dict[tuple, List[Fraction]] = {}
    for x, y in dataset.pairs:
        for other in seen.get(x, ()):
            gap = abs(other - y)
            if (tolerance is None and gap != 0) \
                    or (tolerance is not None and gap >= tolerance):
                raise _error.InconsistentDataError(
                    ','.join(_util.Text.format_rational(v) for v in x))
        seen.setdefault(x, []).append(y)


def _prefix_layers(architecture: Architecture, prefix: Sequence) -> list:
    layers = []
    position = 0
    for rows, cols in architecture.layer_shapes()[:-1]:
        matrix = [prefix[position + r * cols:position + (r + 1) * cols]
                  for r in range(rows)]
        position += rows * cols
        layers.append((matrix, prefix[position:position + rows]))
        position += rows
    return layers


def _accepts(residual, tolerance) -> bool:
    if tolerance is None:
        return residual == 0
    return abs(residual) < tolerance


def _unreachable(residual, reach, tolerance) -> bool:
    if tolerance is None:
        return abs(residual) > reach
    return abs(residual) - reach >= tolerance


def _solve_last_layer(hidden: List[list], labels: list, values: list,
                      sizes: dict, s: int, has_top: bool, width: int,
                      tolerance) -> Optional[list]:
    """Depth-first search for the lexicographically first final weight row
    whose residuals are all accepted"""
    reach = max(abs(v) for v in values)
    # tails[j][i] bounds what columns j onwards can still add to residual i
    tails = [[reach * sum(abs(h) for h in row[j:]) for row in hidden]
             for j in range(width + 1)]

    def search(j: int, residuals: list, top_seen: bool) -> Optional[list]:
        if j == width:
            if top_seen and all(_accepts(r, tolerance) for r in residuals):
                return []
            return None
        for v in values:
            top = top_seen or sizes[v] == s
            if j == width - 1 and not top:
                continue
            updated = [r - v * row[j] for r, row in zip(residuals, hidden)]
            if any(_unreachable(r, tail, tolerance)
                   for r, tail in zip(updated, tails[j + 1])):
                continue
            rest = search(j + 1, updated, top)
            if rest is not None:
                return [v] + rest
        return None

    return search(0, list(labels), has_top)


def _interval_product(a: Tuple, b: Tuple) -> Tuple:
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(products), max(products)


def _output_bounds(layers: list, act: _network.Activation, x: list,
                   last_range: Tuple) -> Tuple:
    """Bounds on the output at x when every hidden parameter lies in its
    (lo, hi) interval and every final weight in last_range. The exact
    activations are nondecreasing, so they map interval endpoints."""
    values = [(v, v) for v in x]
    for matrix, bias in layers:
        outputs = []
        for row, (low, high) in zip(matrix, bias):
            for a, v in zip(row, values):
                term = _interval_product(a, v)
                low, high = low + term[0], high + term[1]
            outputs.append((act.eval_rational(low), act.eval_rational(high)))
        values = outputs
    low = high = 0
    for v in values:
        term = _interval_product(last_range, v)
        low, high = low + term[0], high + term[1]
    return low, high


def _out_of_reach(label, bounds: Tuple, tolerance) -> bool:
    low, high = bounds
    if tolerance is None:
        return label < low or label > high
    return label - high >= tolerance or low - label >= tolerance


def _search(dataset: Dataset, architecture: Architecture,
            act: _network.Activation, mode: str, tolerance: Optional[Fraction],
            max_steps: Optional[int],
            weight_bound: Optional[int] = None) -> Tuple[Network, int]:
    """Returns the first network in enumeration order whose residuals are all
    accepted, together with its 1-based step count.

    Hidden-layer prefixes are walked depth first in lexicographic order.
    A branch is pruned once interval bounds show no completion reaches the
    labels, and the number of networks the walk has passed is tracked
    exactly, so the budget is enforced at every node.
    """
    convert = int if mode == _option.Mode.INTEGER else Fraction
    inputs = [[convert(v) for v in x] for x in dataset.inputs]
    labels = [convert(y) for y in dataset.labels]

    mask = architecture.weight_mask()
    width = architecture[-2]
    total = architecture.free_param_count
    prefix_length = total - width

    offset = 0
    s = 0
    while True:
        if max_steps is not None and offset >= max_steps:
            raise _error.BudgetExhaustedError(max_steps)
        _logger.debug('searching shell %d (networks %d onwards)', s, offset + 1)

        values = [convert(v) for v in _enumeration.shell_values(mode, s)]
        sizes = {v: _enumeration.value_size(mode, v) for v in values}
        outer = len(values)
        inner = len(_enumeration.shell_values(mode, s - 1)) if s else 0
        bounded = [v for v in values
                   if weight_bound is None or abs(v) <= weight_bound]
        allowed = [bounded if mask[i] else values
                   for i in range(prefix_length)]
        ranges = [(min(choice), max(choice)) for choice in allowed]
        last_range = (min(bounded), max(bounded))
        # networks of this shell that lie before the current branch
        passed = 0

        def count(remaining: int, has_top: bool) -> int:
            return _enumeration.completion_count(remaining, outer, inner,
                                                 has_top)

        def hopeless(prefix: list) -> bool:
            intervals = [(v, v) for v in prefix] + ranges[len(prefix):]
            layers = _prefix_layers(architecture, intervals)
            return any(_out_of_reach(y, _output_bounds(layers, act, x,
                                                       last_range), tolerance)
                       for x, y in zip(inputs, labels))

        def walk(prefix: list, has_top: bool) -> Optional[list]:
            nonlocal passed
            if max_steps is not None and offset + passed >= max_steps:
                raise _error.BudgetExhaustedError(max_steps)
            i = len(prefix)
            if i == prefix_length:
                layers = _prefix_layers(architecture, prefix)
                hidden = [_network.propagate(layers, act, x) for x in inputs]
                row = _solve_last_layer(hidden, labels, bounded, sizes, s,
                                        has_top, width, tolerance)
                if row is None:
                    passed += count(width, has_top)
                    return None
                return prefix + row
            if hopeless(prefix):
                passed += count(total - i, has_top)
                return None
            for v in values:
                top = has_top or sizes[v] == s
                if v not in allowed[i]:
                    passed += count(total - i - 1, top)
                    continue
                found = walk(prefix + [v], top)
                if found is not None:
                    return found
            return None

        params = walk([], s == 0)
        if params is not None:
            net = _network.network_from_parameters(architecture, params)
            steps = _enumeration.network_rank(net, mode) + 1
            if max_steps is not None and steps > max_steps:
                raise _error.BudgetExhaustedError(max_steps)
            _logger.info('accepted network %d in shell %d', steps, s)
            return net, steps

        offset += _enumeration.shell_size(architecture, mode, s)
        s += 1


def _prepare(dataset: Dataset, architecture: Sequence[int],
             cfg: LearnerConfig) -> Tuple[Architecture, _network.Activation]:
    architecture = Architecture(architecture)
    if dataset.d != architecture.input_dim:
        raise _error.ShapeMismatchError(architecture.input_dim, dataset.d)
    act = _network.get_activation(cfg.activation)
    if not act.exact_on_rationals:
        raise _error.InexactActivationError(act.name)
    return architecture, act


def enum_learn(dataset: Dataset, architecture: Sequence[int],
               cfg: LearnerConfig) -> LearnReport:
    """Returns the first rational network whose residuals on the dataset are
    all below epsilon/2"""
    architecture, act = _prepare(dataset, architecture, cfg)
    check_consistency(dataset, cfg.epsilon)
    net, steps = _search(dataset, architecture, act, _option.Mode.RATIONAL,
                         cfg.epsilon / 2, cfg.max_steps)
    return LearnReport(net, steps, cfg.epsilon, _option.LearnMode.ENUM,
                       act.name)


def psi_radius(net: Network, act: _network.Activation,
               cfg: LearnerConfig) -> Fraction:
    """The generalization radius eps / (2 (LipUB(a_max) + Lip(net)))"""
    worst_case = _network.admissible_lipschitz_bound(net.architecture, act,
                                                     cfg.a_max)
    return cfg.epsilon / (2 * (worst_case
                               + _network.lipschitz_bound(net, act)))


def lipschitz_enum_learn(dataset: Dataset, architecture: Sequence[int],
                         cfg: LearnerConfig) -> LearnReport:
    """enum_learn plus the certified generalization radius. Any network with
    scaling norm <= a_max that generated the dataset stays within epsilon of
    the learned network on the psi_radius balls around the inputs."""
    architecture, act = _prepare(dataset, architecture, cfg)
    check_consistency(dataset, cfg.epsilon)
    weight_bound = cfg.a_max if cfg.admissible_only else None
    net, steps = _search(dataset, architecture, act, _option.Mode.RATIONAL,
                         cfg.epsilon / 2, cfg.max_steps, weight_bound)
    radius = psi_radius(net, act, cfg)
    _logger.info('generalization radius %s', _util.Text.format_rational(radius))
    return LearnReport(net, steps, cfg.epsilon, _option.LearnMode.LIPSCHITZ,
                       act.name, psi_radius=radius)


def uniform_psi_lower_bound(architecture: Sequence[int],
                            cfg: LearnerConfig) -> Fraction:
    """eps / (4 LipUB(a_max)), a lower bound on psi_radius for every network
    lipschitz_enum_learn can return when admissible_only is set"""
    if not cfg.admissible_only:
        raise _error.InvalidConfigError(
            'the uniform bound only holds for admissible_only runs')
    act = _network.get_activation(cfg.activation)
    worst_case = _network.admissible_lipschitz_bound(architecture, act,
                                                     cfg.a_max)
    return cfg.epsilon / (4 * worst_case)


def covering_grid(lower: Fraction, upper: Fraction, radius: Fraction,
                  d: int) -> List[List[Fraction]]:
    """Equidistant grid on [lower, upper]^d whose closed radius-balls cover
    the box"""
    lower, upper, radius = Fraction(lower), Fraction(upper), Fraction(radius)
    if radius <= 0 or lower > upper or d < 1:
        raise _error.InvalidConfigError('invalid covering grid request')
    # a cell of side h has half-diagonal h sqrt(d) / 2 <= radius
    max_spacing = 2 * radius / _util.sqrt_upper_bound(d)
    count = _math.ceil((upper - lower) / max_spacing) + 1
    if count == 1:
        axis = [lower]
    else:
        spacing = (upper - lower) / (count - 1)
        axis = [lower + i * spacing for i in range(count)]
    return [list(point) for point in _itertools.product(axis, repeat=d)]


def make_encoded_dataset(net: Network, n: int,
                         act: Optional[_network.Activation] = None) -> Dataset:
    """A dataset of size n whose first input carries the encoded parameters
    of net; the other n - 1 pairs are the zero input with its true label"""
    act = act or _network.relu()
    if n < 1:
        raise _error.InvalidConfigError('dataset size must be at least 1')
    if not net.is_integer:
        raise _error.InvalidNetworkError('encoding needs integer parameters')
    d = net.architecture.input_dim
    code = _enumeration.godel_encode(
        [int(p) for p in net.parameters()], d)
    origin = [0] * d
    pairs = [(code, _network.realize(net, act, code))]
    pairs += [(origin, _network.realize(net, act, origin))] * (n - 1)
    return Dataset(pairs, d)


def quantized_learn_encode(dataset: Dataset, architecture: Sequence[int],
                           act: Optional[_network.Activation] = None) \
        -> Network:
    """Decodes the network carried by the first input of the dataset and
    checks it against every stored label"""
    architecture = Architecture(architecture)
    act = act or _network.relu()
    if len(dataset.pairs) == 0:
        raise _error.DecodeError('empty dataset')
    if dataset.d != architecture.input_dim:
        raise _error.DecodeError(
            f'dataset dimension {dataset.d} does not match '
            f'{list(architecture)}')

    first, _ = dataset.pairs[0]
    params = _enumeration.godel_decode(first, architecture.free_param_count)
    net = _network.network_from_parameters(architecture, params)
    for x, y in dataset.pairs:
        if _network.realize(net, act, x) != y:
            raise _error.DecodeError('decoded network does not reproduce '
                                     'the dataset labels')
    return net


def quantized_enum_learn(dataset: Dataset, architecture: Sequence[int],
                         cfg: LearnerConfig) -> LearnReport:
    """Returns the first integer network that agrees exactly with every
    dataset label"""
    architecture, act = _prepare(dataset, architecture, cfg)
    if not act.exact_on_integers:
        raise _error.InexactActivationError(act.name)
    if not dataset.is_integer:
        raise _error.InvalidDatasetError('quantized learning needs integer '
                                         'inputs and labels')
    check_consistency(dataset)
    net, steps = _search(dataset, architecture, act, _option.Mode.INTEGER,
                         None, cfg.max_steps)
    return LearnReport(net, steps, Fraction(0), _option.LearnMode.QUANTIZED,
                       act.name)


def _decode_learn(dataset: Dataset, architecture: Sequence[int],
                  cfg: LearnerConfig) -> LearnReport:
    act = _network.get_activation(cfg.activation)
    net = quantized_learn_encode(dataset, architecture, act)
    return LearnReport(net, 0, Fraction(0), _option.LearnMode.DECODE,
                       act.name)


_LEARNERS = {_option.LearnMode.ENUM: enum_learn,
             _option.LearnMode.LIPSCHITZ: lipschitz_enum_learn,
             _option.LearnMode.QUANTIZED: quantized_enum_learn,
             _option.LearnMode.DECODE: _decode_learn}


def create_learn_func(mode: str, architecture: Sequence[int],
                      cfg: LearnerConfig) -> LearnFunc:
    """Returns a preseeded learner for the given mode"""
    if not _option.is_valid_learn_mode(mode):
        raise _error.InvalidConfigError(f'{mode} is not a learner')
    learner = _LEARNERS[mode]
    architecture = Architecture(architecture)

    def learn_func(dataset: Dataset) -> LearnReport:
        return learner(dataset, architecture, cfg)

    return learn_func


def learn_many(jobs: Sequence[Tuple[LearnFunc, Dataset]]) \
        -> List[LearnReport]:
    """Runs independent learner jobs on a worker pool. Reports come back in
    job order; the first failed job's error is raised once all have run."""
    results: List[Any] = [None] * len(jobs)

    def _learn_concurrently():
        while True:
            job = q.get()
            if job is None:
                q.task_done()
                return
            index, (learn, dataset) = job
            try:
                results[index] = learn(dataset)
            except Exception as err:
                results[index] = err
            q.task_done()

    q = Queue()
    workers = []
    for _ in range(max(1, min(_util.NUMBER_OF_THREADS, len(jobs)))):
        t = Thread(target=_learn_concurrently)
        t.daemon = True
        t.start()
        workers.append(t)

    for job in enumerate(jobs):
        q.put(job)
    q.join()

    # one sentinel per worker
    for _ in workers:
        q.put(None)
    for t in workers:
        t.join()

    for result in results:
        if isinstance(result, Exception):
            raise result
    return results
