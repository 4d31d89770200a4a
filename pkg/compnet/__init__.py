"""compnet: certified computation with exact-parameter neural networks"""
import logging as _logging
from os import path as _path

from compnet.src import core, main

__all__ = ['core', 'main']

VERSION = open(_path.join(_path.dirname(__file__), 'VERSION'), 'r').read()

_logging.getLogger(__name__).addHandler(_logging.NullHandler())
