"""Backbone for the compnet module"""
from compnet.src import core
from compnet.src.cli import main

__all__ = ['core', 'main']
