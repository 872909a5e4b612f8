"""The named corpus: ten small cocommutative Hopf algebras.

Every structural statement the tool verifies has at least one nontrivial
witness among these, with all dimensions at most 27.  Basis orders are
canonical per constructor so reports are byte-stable.
"""

from __future__ import annotations

from .ff import Field
from .hopf import (
    HopfAlgebraData,
    cyclic_group,
    dihedral8,
    elementary_abelian,
    group_algebra,
    quaternion8,
    symmetric3,
    u_sl2,
)

_BUILDERS = {
    "kZ2@p2": lambda F: group_algebra(cyclic_group(2), F or Field(2)),
    "kZ2xZ2@p2": lambda F: group_algebra(elementary_abelian(2, 2), F or Field(2)),
    "kZ4@p2": lambda F: group_algebra(cyclic_group(4), F or Field(2)),
    "kD8@p2": lambda F: group_algebra(dihedral8(), F or Field(2)),
    "kQ8@p2": lambda F: group_algebra(quaternion8(), F or Field(2)),
    "kS3@p2": lambda F: group_algebra(symmetric3(), F or Field(2)),
    "kZ3@p3": lambda F: group_algebra(cyclic_group(3), F or Field(3)),
    "kS3@p3": lambda F: group_algebra(symmetric3(), F or Field(3)),
    "usl2@p3": lambda F: u_sl2(F or Field(3)),
    "kZ2xZ3@p2": lambda F: group_algebra(
        cyclic_group(2).product(cyclic_group(3)), F or Field(2, 2)
    ),
}

_CHAR = {name: (2 if "p2" in name else 3) for name in _BUILDERS}

# caps at which the cohomology presentation of each member is complete
PRESENTATION_CAPS = {
    "kZ2@p2": 2,
    "kZ2xZ2@p2": 2,
    "kZ4@p2": 2,
    "kD8@p2": 2,
    "kQ8@p2": 5,
    "kS3@p2": 2,
    "kZ3@p3": 2,
    "kS3@p3": 4,
    "usl2@p3": 4,
    "kZ2xZ3@p2": 2,
}


def corpus_names():
    return sorted(_BUILDERS)


def normalize_name(name: str) -> str:
    key = name.replace("/", "").replace("k[", "k").replace("]", "")
    key = key.replace("u(sl2)", "usl2").replace("usl(2)", "usl2")
    for cand in _BUILDERS:
        if cand.lower() == key.lower():
            return cand
    raise KeyError(f"unknown builtin algebra {name!r}; known: {', '.join(corpus_names())}")


def build(name: str, field: Field | None = None) -> HopfAlgebraData:
    key = normalize_name(name)
    if field is not None and field.p != _CHAR[key]:
        raise ValueError(f"{key} needs characteristic {_CHAR[key]}, got {field.p}")
    a = _BUILDERS[key](field)
    a.name = key
    return a


def builtin_char(name: str) -> int:
    return _CHAR[normalize_name(name)]
