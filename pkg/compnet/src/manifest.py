"""Run manifests written next to command outputs"""
import hashlib as _hashlib
import os as _os
from typing import Dict, List, Sequence

from compnet.src.core import fields as _fields, util as _util

MANIFEST_SUFFIX = '.manifest.json'


def file_digest(path: str) -> str:
    """Returns the SHA-256 hex digest of a file"""
    digest = _hashlib.sha256()
    with open(path, 'rb') as input_file:
        for chunk in iter(lambda: input_file.read(1 << 16), b''):
            digest.update(chunk)
    return digest.hexdigest()


class RunManifest(dict):
    """A dict-like object describing one command invocation"""

    def __init__(self, command: str, configuration: dict,
                 input_paths: Sequence[str], outputs: Sequence[str],
                 duration_seconds: float):
        super().__init__()
        self[_fields.Manifest.COMMAND] = command
        self[_fields.Manifest.CONFIGURATION] = configuration
        self[_fields.Manifest.INPUT_DIGESTS] = \
            {path: file_digest(path) for path in input_paths}
        self[_fields.Manifest.OUTPUTS] = list(outputs)
        self[_fields.Manifest.DURATION] = round(duration_seconds, 6)

    def __str__(self) -> str:
        return self.to_json()

    @property
    def command(self) -> str:
        return self[_fields.Manifest.COMMAND]

    @property
    def configuration(self) -> dict:
        return self[_fields.Manifest.CONFIGURATION]

    @property
    def input_digests(self) -> Dict[str, str]:
        return self[_fields.Manifest.INPUT_DIGESTS]

    @property
    def outputs(self) -> List[str]:
        return self[_fields.Manifest.OUTPUTS]

    @property
    def duration_seconds(self) -> float:
        return self[_fields.Manifest.DURATION]

    def to_json(self) -> str:
        """Returns the manifest as a JSON string"""
        return _util.to_json(dict(self))

    def write(self, out_path: str) -> str:
        """Writes the manifest beside out_path and returns its path"""
        path = _os.fspath(out_path) + MANIFEST_SUFFIX
        with open(path, 'w') as manifest_file:
            manifest_file.write(self.to_json())
        return path
