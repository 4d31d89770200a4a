"""Command-line interface for compnet"""
import functools as _functools
import itertools as _itertools
import logging as _logging
import os as _os
import sys as _sys
import time as _time
from fractions import Fraction
from typing import Any, List, Optional, Sequence

import click

from compnet.src.core import (classify as _classify,
                              error as _error,
                              exact_real as _exact_real,
                              index as _index,
                              learners as _learners,
                              network as _network,
                              option as _option,
                              topology_demo as _topology_demo,
                              util as _util)
from compnet.src.manifest import RunManifest

_logger = _logging.getLogger(__name__)

_EXIT_CODES = [
    (_error.InconsistentDataError, _option.ExitCode.INCONSISTENT_DATA),
    (_error.BudgetExhaustedError, _option.ExitCode.BUDGET_EXHAUSTED),
    (_error.DecodeError, _option.ExitCode.DECODE_ERROR),
    (_error.AmbiguousAcceptError, _option.ExitCode.AMBIGUOUS_ACCEPT),
    (_error.DomainError, _option.ExitCode.DOMAIN_ERROR),
    ((_error.InvalidRationalError,
      _error.InvalidArchitectureError,
      _error.ShapeMismatchError,
      _error.NonzeroFinalBiasError,
      _error.InexactActivationError,
      _error.UnknownActivationError,
      _error.InvalidDatasetError,
      _error.InvalidNetworkError,
      _error.InvalidConfigError,
      _error.InsufficientClassesError,
      _error.DuplicateKeyError,
      OSError,
      ValueError), _option.ExitCode.USAGE)]

EXIT_FLAG_SAMPLES = ['-3', '-2', '-3/2', '-1', '-1/2', '0',
                     '1/2', '1', '3/2', '2', '3']
QUANTIZATION_SAMPLES = ['0', '1/4', '1/2', '3/4', '1', '3/2',
                        '2', '5/2', '3']
QUANTIZATION_FUELS = [4, 16]


class RationalType(click.ParamType):
    """An exact rational given as "p/q" or an integer"""
    name = 'rational'

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return _util.Text.parse_rational(value)
        except _error.InvalidRationalError as err:
            self.fail(str(err), param, ctx)


class VectorType(click.ParamType):
    """A comma-separated list of exact rationals"""
    name = 'vector'

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            return _util.Text.parse_rational_list(value)
        except _error.InvalidRationalError as err:
            self.fail(str(err), param, ctx)


class ArchitectureType(click.ParamType):
    """Layer widths such as "2,3,1" """
    name = 'architecture'

    def convert(self, value, param, ctx):
        if isinstance(value, _network.Architecture):
            return value
        try:
            return _network.Architecture(_util.Text.parse_architecture(value))
        except _error.InvalidArchitectureError as err:
            self.fail(str(err), param, ctx)


RATIONAL = RationalType()
VECTOR = VectorType()
ARCHITECTURE = ArchitectureType()


def _exit_code_for(err: Exception) -> int:
    for error_types, code in _EXIT_CODES:
        if isinstance(err, error_types):
            return code
    raise err


def _handle_errors(command):
    """Maps domain errors onto the documented exit codes"""
    @_functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except click.exceptions.Exit:
            raise
        except Exception as err:
            code = _exit_code_for(err)
            click.echo(f'error: {err}', err=True)
            raise click.exceptions.Exit(code)
    return wrapper


def _resolve(path: str) -> str:
    """Returns path itself, or the shipped example of that name"""
    if not _os.path.exists(path) and _index.exists_in_index(path):
        return _index.lookup_example_path(path)
    return path


def _sibling(out: str, kind: str) -> str:
    stem, extension = _os.path.splitext(out)
    return f'{stem}.{kind}{extension or ".json"}'


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return _util.Text.format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _write(text: str, path: str) -> None:
    with open(path, 'w') as output_file:
        output_file.write(text)


def _emit(text: str, out: Optional[str], inputs: Sequence[str] = (),
          extra_outputs: Sequence[str] = ()) -> None:
    """Writes the primary output and, with --out, its run manifest"""
    if out is None:
        click.echo(text, nl=False)
        return
    _write(text, out)
    ctx = click.get_current_context()
    started = ctx.meta.get('compnet.started', _time.monotonic())
    configuration = {key: _plain(value) for key, value in ctx.params.items()}
    manifest = RunManifest(ctx.command_path, configuration, inputs,
                           [out, *extra_outputs],
                           _time.monotonic() - started)
    manifest.write(out)
    _logger.info('wrote %s', out)


def _configure_logging() -> None:
    logger = _logging.getLogger('compnet')
    if not any(getattr(h, 'compnet_cli', False) for h in logger.handlers):
        handler = _logging.StreamHandler(_sys.stderr)
        handler.compnet_cli = True
        handler.setFormatter(
            _logging.Formatter('%(asctime)s %(name)s %(levelname)s '
                               '%(message)s'))
        logger.addHandler(handler)
    logger.setLevel(_logging.DEBUG)


@click.group()
@click.option('--verbose', is_flag=True, help='Log progress to stderr')
@click.pass_context
def main(ctx: click.Context, verbose: bool):
    """Certified learning, classification and demos with exact-parameter
    neural networks. Every numeric flag is an exact "p/q" rational."""
    ctx.meta['compnet.started'] = _time.monotonic()
    if verbose:
        _configure_logging()


@main.command()
@click.argument('mode', type=click.Choice([_option.LearnMode.ENUM,
                                           _option.LearnMode.LIPSCHITZ,
                                           _option.LearnMode.QUANTIZED,
                                           _option.LearnMode.DECODE]))
@click.argument('dataset_path')
@click.option('--arch', type=ARCHITECTURE, required=True,
              help='Layer widths "N0,N1,...,1"')
@click.option('--epsilon', type=RATIONAL, default='1/16',
              help='Tolerance for enum and lipschitz')
@click.option('--a-max', type=click.IntRange(min=1), default=1,
              help='Admissible-class bound on weight entries')
@click.option('--max-steps', type=click.IntRange(min=1),
              default=_util.DEFAULT_MAX_STEPS, help='Enumeration budget')
@click.option('--activation', default=_option.Activation.RELU,
              help='relu, leaky_relu[:p/q], hard_sigmoid')
@click.option('--admissible-only', is_flag=True,
              help='Only accept networks with scaling norm <= a-max')
@click.option('--out', type=click.Path(dir_okay=False),
              help='Report path; the network goes beside it')
@_handle_errors
def learn(mode: str, dataset_path: str, arch: _network.Architecture,
          epsilon: Fraction, a_max: int, max_steps: int, activation: str,
          admissible_only: bool, out: Optional[str]):
    """Learn a network from DATASET_PATH"""
    dataset_path = _resolve(dataset_path)
    dataset = _network.load_dataset(dataset_path)
    cfg = _learners.LearnerConfig(epsilon, a_max, max_steps, activation,
                                  admissible_only)
    learn_func = _learners.create_learn_func(mode, arch, cfg)

    try:
        report = learn_func(dataset)
    except _error.BudgetExhaustedError as err:
        report = _learners.LearnReport(None, err.steps, epsilon, mode,
                                       activation, budget_exhausted=True)
        _emit(report.to_json(), out, [dataset_path])
        raise

    extra_outputs = []
    if out is not None:
        network_path = _sibling(out, 'network')
        network_document = _network.network_to_document(
            report.learned, _network.get_activation(activation))
        _write(_util.to_json(network_document), network_path)
        extra_outputs.append(network_path)
    _emit(report.to_json(), out, [dataset_path], extra_outputs)


def _grid_inputs(grid: List[Fraction], d: int) -> List[List[int]]:
    if len(grid) != 2 or any(v.denominator != 1 for v in grid):
        raise _error.InvalidConfigError('--grid takes two integers "LO,HI"')
    low, high = int(grid[0]), int(grid[1])
    axis = range(low, high + 1)
    return [list(point) for point in _itertools.product(axis, repeat=d)]


@main.command()
@click.argument('network_path')
@click.option('--x', 'points', type=VECTOR, multiple=True,
              help='An input vector "p/q,p/q,..."; repeatable')
@click.option('--grid', type=VECTOR, help='Integer grid "LO,HI" per axis')
@click.option('--encoded', is_flag=True,
              help='Carry the network parameters in the first input')
@click.option('--n', type=click.IntRange(min=1), default=1,
              help='Dataset size for --encoded')
@click.option('--ball-radius', type=RATIONAL,
              help='Resample inside balls of this radius around the inputs')
@click.option('--samples', type=click.IntRange(min=1), default=1,
              help='Samples per input for --ball-radius')
@click.option('--seed', type=int, default=0, help='Sampling seed')
@click.option('--out', type=click.Path(dir_okay=False))
@_handle_errors
def gen(network_path: str, points: Sequence[List[Fraction]],
        grid: Optional[List[Fraction]], encoded: bool, n: int,
        ball_radius: Optional[Fraction], samples: int, seed: int,
        out: Optional[str]):
    """Generate a dataset labeled by the network at NETWORK_PATH"""
    if sum([bool(points), grid is not None, encoded]) != 1:
        raise click.UsageError('give exactly one of --x, --grid, --encoded')

    network_path = _resolve(network_path)
    net, act = _network.load_network(network_path)
    if encoded:
        dataset = _learners.make_encoded_dataset(net, n, act)
    else:
        inputs = list(points) if points else \
            _grid_inputs(grid, net.architecture.input_dim)
        dataset = _network.make_dataset(net, act, inputs)
        if ball_radius is not None:
            dataset = _network.sample_generalization_ball(
                net, act, dataset, ball_radius, samples, seed)
    _emit(dataset.to_json(), out, [network_path])


@main.command(name='classify')
@click.option('--class', 'class_paths', multiple=True, required=True,
              help='Ball union document of one class; repeatable, in order')
@click.option('--x', 'point', type=VECTOR, required=True,
              help='The query point "p/q,..."')
@click.option('--fuel', type=click.IntRange(min=1),
              default=_util.DEFAULT_FUEL)
@click.option('--out', type=click.Path(dir_okay=False))
@_handle_errors
def classify_command(class_paths: Sequence[str], point: List[Fraction],
                     fuel: int, out: Optional[str]):
    """Dovetail the class semi-deciders on a point"""
    class_paths = [_resolve(path) for path in class_paths]
    deciders = [_classify.ball_union_semidecider(
        _classify.load_ball_union(path)) for path in class_paths]
    x = _exact_real.creal_vector_from_rationals(point)
    verdict = _classify.dovetail_classify(deciders, x, fuel)
    _emit(verdict.to_json(), out, class_paths)


def _exit_flag_document(epsilon: Fraction, fuel: int,
                        points: Sequence[Fraction]) -> dict:
    fmt = _util.Text.format_rational
    threshold = _classify.exit_flag_threshold(epsilon)
    decider = _classify.exit_flag_semidecider(epsilon, threshold)
    results = []
    for x in points:
        verdict = decider.query(
            _exact_real.creal_vector_from_rationals([x]), fuel)
        results.append({'x': fmt(x), 'verdict': verdict})
    return {'epsilon': fmt(epsilon),
            'fuel': fuel,
            'threshold': fmt(threshold),
            'results': results}


def _quantization_document(fuel: int,
                           points: Sequence[Fraction]) -> dict:
    fmt = _util.Text.format_rational
    fuels = sorted(set(QUANTIZATION_FUELS + [fuel]))
    results = []
    for x in points:
        rounding = {}
        for t in fuels:
            value = _classify.certified_round(
                _exact_real.creal_from_rational(x), t)
            rounding[str(t)] = _option.Verdict.UNKNOWN if value is None \
                else value
        results.append({'x': fmt(x), 'rounding': rounding})
    return {'fuels': fuels, 'results': results}


@main.command()
@click.argument('which', type=click.Choice([_option.Demo.TOPOLOGY,
                                            _option.Demo.EXIT_FLAG,
                                            _option.Demo.QUANTIZATION]))
@click.option('--k-max', type=click.IntRange(min=1), default=8,
              help='Rows of the topology table')
@click.option('--epsilon', type=RATIONAL, default='1/2',
              help='Exit-flag tolerance in (0, 1)')
@click.option('--fuel', type=click.IntRange(min=1),
              default=_util.DEFAULT_FUEL)
@click.option('--x', 'points', type=RATIONAL, multiple=True,
              help='Sample points; repeatable')
@click.option('--out', type=click.Path(dir_okay=False))
@_handle_errors
def demo(which: str, k_max: int, epsilon: Fraction, fuel: int,
         points: Sequence[Fraction], out: Optional[str]):
    """Run the topology, exitflag or quantization demo"""
    if which == _option.Demo.TOPOLOGY:
        document = {'rows': _topology_demo.topology_table(k_max)}
    elif which == _option.Demo.EXIT_FLAG:
        points = points or [_util.Text.parse_rational(p)
                            for p in EXIT_FLAG_SAMPLES]
        document = _exit_flag_document(epsilon, fuel, points)
    else:
        points = points or [_util.Text.parse_rational(p)
                            for p in QUANTIZATION_SAMPLES]
        document = _quantization_document(fuel, points)
    _emit(_util.to_json(document), out)
