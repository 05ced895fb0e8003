"""Componentwise orders on R^m restricted to an index set.

Index sets are 1-based, matching the usual ``M = {1, ..., m}`` convention.
All comparisons are exact: no tolerance is applied anywhere in this module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union


class InvalidArgument(ValueError):
    """Raised for malformed points, index sets or mismatched dimensions."""


def as_point(coords: Iterable) -> tuple:
    """Validate ``coords`` and return them as a tuple.

    Numbers keep their type so that ``Fraction`` inputs stay exact.
    """
    pt = tuple(coords)
    if len(pt) < 1:
        raise InvalidArgument("a point needs at least one coordinate")
    for c in pt:
        if not math.isfinite(c):
            raise InvalidArgument(f"non-finite coordinate {c!r} in point {pt!r}")
    return pt


@dataclass(frozen=True)
class IndexSet:
    """A nonempty, strictly increasing set of 1-based objective indices."""

    members: tuple

    def __post_init__(self):
        members = tuple(int(i) for i in self.members)
        if not members:
            raise InvalidArgument("index set must be nonempty")
        if any(b <= a for a, b in zip(members, members[1:])):
            raise InvalidArgument(f"index set must be strictly increasing: {members}")
        if members[0] < 1:
            raise InvalidArgument(f"indices are 1-based, got {members}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, items: Iterable[int]) -> "IndexSet":
        return cls(tuple(sorted(set(int(i) for i in items))))

    @classmethod
    def full(cls, m: int) -> "IndexSet":
        return cls(tuple(range(1, m + 1)))

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i) -> bool:
        return i in self.members

    @property
    def zero_based(self) -> tuple:
        return tuple(i - 1 for i in self.members)

    def check_dim(self, m: int) -> None:
        if self.members[-1] > m:
            raise InvalidArgument(f"index {self.members[-1]} out of range for dimension {m}")

    def issubset(self, other: "IndexSet") -> bool:
        return set(self.members) <= set(other.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.members) + "}"


IndexLike = Union[IndexSet, Iterable[int]]


def as_index_set(I: IndexLike) -> IndexSet:
    if isinstance(I, IndexSet):
        return I
    return IndexSet.of(I)


def nonempty_subsets(m: int) -> Iterator[IndexSet]:
    """All nonempty subsets of {1..m}: increasing size, lexicographic within a size."""
    for k in range(1, m + 1):
        for combo in combinations(range(1, m + 1), k):
            yield IndexSet(combo)


def _prepare(y: Sequence, y2: Sequence, I: IndexLike):
    y = as_point(y)
    y2 = as_point(y2)
    if len(y) != len(y2):
        raise InvalidArgument(f"dimension mismatch: {len(y)} vs {len(y2)}")
    I = as_index_set(I)
    I.check_dim(len(y))
    return y, y2, I.zero_based


def leq(y: Sequence, y2: Sequence, I: IndexLike) -> bool:
    """``y <=_I y2``: every coordinate in I is at most the other's."""
    y, y2, idx = _prepare(y, y2, I)
    return all(y[i] <= y2[i] for i in idx)


def lt(y: Sequence, y2: Sequence, I: IndexLike) -> bool:
    """``y <_I y2``: strict inequality in every coordinate of I."""
    y, y2, idx = _prepare(y, y2, I)
    return all(y[i] < y2[i] for i in idx)


def lneq(y: Sequence, y2: Sequence, I: IndexLike) -> bool:
    """``y`` is <= ``y2`` on I and strictly smaller in at least one coordinate."""
    y, y2, idx = _prepare(y, y2, I)
    strict = False
    for i in idx:
        if y[i] > y2[i]:
            return False
        if y[i] < y2[i]:
            strict = True
    return strict
