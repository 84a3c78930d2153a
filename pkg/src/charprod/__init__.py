"""Exact character tables of finite groups and the statistics of chi*conj(chi)."""

from ._accel import USE_NUMBA
from .char_algebra import decompose, decompose_square, eta, induce, restrict
from .char_table import CharacterTable, ClassFunction, character_table, format_table
from .errors import (
    CapacityError,
    CharprodError,
    ConstructionError,
    DixonError,
    GroupFormatError,
    NotACharacterError,
    PreconditionError,
)
from .group_core import Group, Subgroup, load_group
from .zoo import corpus, from_label

__all__ = [
    "USE_NUMBA",
    "Group",
    "Subgroup",
    "load_group",
    "from_label",
    "corpus",
    "CharacterTable",
    "ClassFunction",
    "character_table",
    "format_table",
    "decompose",
    "decompose_square",
    "eta",
    "induce",
    "restrict",
    "CharprodError",
    "GroupFormatError",
    "CapacityError",
    "PreconditionError",
    "NotACharacterError",
    "ConstructionError",
    "DixonError",
]
