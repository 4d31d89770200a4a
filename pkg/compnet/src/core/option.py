"""Module for handling compnet options"""
from typing import Optional


def _options(option_class) -> set:
    return set(getattr(option_class, o)
               for o in vars(option_class) if o[:2] != '__')


def is_valid_mode(mode: Optional[str]) -> bool:
    """Returns true if the value given is a valid enumeration mode"""
    return mode in _options(Mode)


def is_valid_learn_mode(mode: Optional[str]) -> bool:
    """Returns true if the value given is a valid learner"""
    return mode in _options(LearnMode)


def is_valid_activation(name: Optional[str]) -> bool:
    """Returns true if the value given names a shipped activation"""
    if name is None:
        return False
    return name.split(':')[0] in _options(Activation)


def is_valid_demo(name: Optional[str]) -> bool:
    """Returns true if the value given is a valid demo"""
    return name in _options(Demo)


class Verdict:
    """Outcomes of comparisons and semi-decision queries"""
    ACCEPT = 'accept'
    REJECT = 'reject'
    UNKNOWN = 'unknown'
    LESS = 'less'
    GREATER = 'greater'


class Mode:
    """Parameter domains an enumeration runs over"""
    INTEGER = 'integer'
    RATIONAL = 'rational'


class LearnMode:
    """Available learners"""
    ENUM = 'enum'
    LIPSCHITZ = 'lipschitz'
    QUANTIZED = 'quantized'
    DECODE = 'decode'


class Activation:
    """Shipped activation functions"""
    RELU = 'relu'
    LEAKY_RELU = 'leaky_relu'
    HARD_SIGMOID = 'hard_sigmoid'
    ATAN = 'atan'


class Demo:
    """Available demos"""
    TOPOLOGY = 'topology'
    EXIT_FLAG = 'exitflag'
    QUANTIZATION = 'quantization'


class ExitCode:
    """Process exit codes of the command-line tool"""
    OK = 0
    USAGE = 2
    INCONSISTENT_DATA = 3
    BUDGET_EXHAUSTED = 4
    DECODE_ERROR = 5
    AMBIGUOUS_ACCEPT = 6
    DOMAIN_ERROR = 7
