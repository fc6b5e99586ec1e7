"""Python access to the sgf library. Groups, trellises and structures are the
same JSON documents the command line tool reads and writes, as dicts."""

import json

from . import _sgf
from ._sgf import SgfError

__all__ = [
    "SgfError",
    "catalog_names",
    "catalog_group",
    "validate_group",
    "isomorphic",
    "register_trellis",
    "controllability",
    "derive_shift",
    "verify_shift",
    "signature",
    "latin_labeling",
    "mols",
    "roundtrip",
    "find_state_groups",
    "shift_group_of",
]


def _dump(x):
    return x if isinstance(x, str) else json.dumps(x)


def catalog_names(max_order=64):
    return _sgf.catalog_names(max_order)


def catalog_group(name):
    return json.loads(_sgf.catalog_group(name))


def validate_group(group):
    return _sgf.validate_group(_dump(group))


def isomorphic(a, b):
    return _sgf.isomorphic(_dump(a), _dump(b))


def register_trellis(q, memory):
    return json.loads(_sgf.register_trellis(q, memory))


def controllability(trellis):
    return json.loads(_sgf.controllability(_dump(trellis)))


def derive_shift(trellis):
    return json.loads(_sgf.derive_shift(_dump(trellis)))


def verify_shift(structure):
    return json.loads(_sgf.verify_shift(_dump(structure)))


def signature(structure):
    return json.loads(_sgf.signature(_dump(structure)))


def latin_labeling(structure):
    out = _sgf.latin_labeling(_dump(structure))
    return None if out is None else json.loads(out)


def mols(group):
    return json.loads(_sgf.mols(_dump(group)))


def roundtrip(structure):
    return _sgf.roundtrip(_dump(structure))


def find_state_groups(u0, chain, bound=64):
    return json.loads(_sgf.find_state_groups(_dump(u0), _dump(chain), bound))


def shift_group_of(witness):
    return json.loads(_sgf.shift_group_of(_dump(witness)))
