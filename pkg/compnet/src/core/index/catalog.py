"""A module for the example documents shipped with compnet"""
import os
from typing import List, Optional

EXAMPLES_PATH = (os.path.dirname(os.path.realpath(__file__))
                 + '/examples/')


def list_examples(kind: Optional[str] = None) -> List[str]:
    """Returns the names of the shipped examples, optionally only those of
    one kind (network, dataset or balls)"""
    names = []
    for _, _, file_names in os.walk(EXAMPLES_PATH):
        for name in file_names:
            try:
                stem, file_kind, _ = name.split('.')
            except ValueError:
                continue
            if kind is None or file_kind == kind:
                names.append(f'{stem}.{file_kind}')
    return sorted(names)


def exists_in_index(name: str) -> bool:
    """Returns True if an example of the given name is shipped"""
    return name in list_examples()


def lookup_example_path(name: str) -> str:
    """Returns the path of a shipped example such as "relu_affine.network" """
    if not exists_in_index(name):
        raise FileNotFoundError(f'{name} is not a shipped example')
    return EXAMPLES_PATH + name + '.json'
