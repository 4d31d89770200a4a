"""Custom errors for all things compnet-related"""
from typing import Optional, Sequence


class InvalidRationalError(Exception):
    """A value could not be read as an exact rational"""

    def __init__(self, text: Optional[str] = None):
        if text is not None:
            msg = f'{text!r} is not an exact rational (expected "p/q")'
        else:
            msg = 'Invalid rational given'
        super().__init__(msg)


class InvalidArchitectureError(Exception):
    """Invalid architecture used"""

    def __init__(self, dims: Optional[Sequence[int]] = None, reason: str = ''):
        if dims is not None:
            msg = f'{list(dims)} is not a valid architecture'
        else:
            msg = 'Invalid architecture given'
        if reason:
            msg += f': {reason}'
        super().__init__(msg)


class ShapeMismatchError(Exception):
    """Vector or matrix dimensions disagree with the architecture"""

    def __init__(self, expected: Optional[int] = None,
                 received: Optional[int] = None):
        if expected is not None:
            msg = f'Expected dimension {expected}, received {received}'
        else:
            msg = 'Shape does not match architecture'
        super().__init__(msg)


class NonzeroFinalBiasError(Exception):
    """The final bias vector must be zero"""

    def __init__(self):
        super().__init__('The final layer bias must be zero')


class InexactActivationError(Exception):
    """An exact evaluation was requested of a non-rational activation"""

    def __init__(self, name: Optional[str] = None):
        if name:
            msg = f'Activation {name} cannot be evaluated exactly on rationals'
        else:
            msg = 'Activation is not exact on rationals'
        super().__init__(msg)


class UnknownActivationError(Exception):
    """Invalid activation name used"""

    def __init__(self, name: Optional[str] = None):
        if name:
            msg = f'{name} is not a valid activation'
        else:
            msg = 'Invalid activation given'
        super().__init__(msg)


class InvalidDatasetError(Exception):
    """The dataset is malformed for the requested operation"""

    def __init__(self, reason: str = 'Invalid dataset given'):
        super().__init__(reason)


class InvalidNetworkError(Exception):
    """A network document is malformed"""

    def __init__(self, reason: str = 'Invalid network given'):
        super().__init__(reason)


class InvalidConfigError(Exception):
    """A learner or command configuration is out of range"""

    def __init__(self, reason: str = 'Invalid configuration given'):
        super().__init__(reason)


class InconsistentDataError(Exception):
    """Repeated inputs carry labels no single network can fit"""

    def __init__(self, x: Optional[str] = None):
        if x is not None:
            msg = f'Conflicting labels for input {x}'
        else:
            msg = 'Dataset is inconsistent'
        super().__init__(msg)


class BudgetExhaustedError(Exception):
    """The step budget ran out before an acceptable network was found"""

    def __init__(self, steps: int):
        self.steps = steps
        super().__init__(f'No network accepted within {steps} steps')


class DecodeError(Exception):
    """A dataset does not carry a valid network encoding"""

    def __init__(self, reason: str = 'Dataset does not decode to a network'):
        super().__init__(reason)


class AmbiguousAcceptError(Exception):
    """Several class semi-deciders accepted the same point"""

    def __init__(self, indices: Sequence[int]):
        self.indices = list(indices)
        super().__init__(f'Classes {self.indices} all accepted the input')


class DuplicateKeyError(Exception):
    """A finite classifier table lists the same input twice"""

    def __init__(self, key: Optional[Sequence[int]] = None):
        if key is not None:
            msg = f'{tuple(key)} appears more than once'
        else:
            msg = 'Duplicate key in table'
        super().__init__(msg)


class DomainError(Exception):
    """A query lies outside a finite classifier's domain"""

    def __init__(self, key: Optional[Sequence[int]] = None):
        if key is not None:
            msg = f'{tuple(key)} is outside the classifier domain'
        else:
            msg = 'Query outside domain'
        super().__init__(msg)


class InsufficientClassesError(Exception):
    """A separation audit needs samples from at least two classes"""

    def __init__(self):
        super().__init__('At least two classes are required')
