"""Normalized ideals (ideals with minimum 0) of a numerical semigroup, in Kunz coordinates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AmbientMismatch, FullSet, LengthMismatch, NotAnIdeal, NotNormalized
from .kunz import (
    KunzVector,
    includes,
    intersect_kunz,
    max_gap_kunz,
    member,
    oracle_staircase_set,
    sum_kunz,
    union_kunz,
)
from .semigroup import NumericalSemigroup

__all__ = [
    "KunzVector",
    "NormalizedIdeal",
    "from_kunz",
    "from_generator_set",
    "sum_kunz",
    "union_kunz",
    "intersect_kunz",
    "includes",
    "gap_count",
    "is_idempotent",
    "minimal_generators_of_ideal",
    "max_gap",
    "oracle_staircase_set",
    "ideal_violation",
]


def ideal_violation(S: NumericalSemigroup, v: Sequence[int]) -> str | None:
    """Describe the first reason ``v`` fails to be a normalized ideal of S, or None."""
    if len(v) != len(S.kunz):
        raise LengthMismatch(f"{tuple(v)} has length {len(v)}, expected {len(S.kunz)}")
    k = S.kunz
    for i, (x, u) in enumerate(zip(v, k), start=1):
        if x > u:
            return f"x{i} = {x} > {u}: S is not contained in I"
    if len(v) == 2:
        (x, y), (u, w) = v, k
        if x + u < y:
            return f"x1 + k1 = {x + u} < x2 = {y}"
        if y + w + 1 < x:
            return f"x2 + k2 + 1 = {y + w + 1} < x1 = {x}"
        return None
    closed = sum_kunz(v, k)
    if closed != tuple(v):
        i = next(i for i, (a, b) in enumerate(zip(closed, v), start=1) if a != b)
        return f"I + S != I in residue class {i}"
    return None


@dataclass(frozen=True)
class NormalizedIdeal:
    ambient: NumericalSemigroup
    kunz: KunzVector

    def __post_init__(self):
        if not isinstance(self.kunz, KunzVector):
            object.__setattr__(self, "kunz", KunzVector(self.kunz))

    @property
    def m(self) -> int:
        return self.ambient.multiplicity

    def __contains__(self, n: int) -> bool:
        return member(self.kunz, n)

    def _same(self, other: "NormalizedIdeal") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"ideals of {self.ambient} and {other.ambient}")

    def __add__(self, other: "NormalizedIdeal") -> "NormalizedIdeal":
        self._same(other)
        return NormalizedIdeal(self.ambient, sum_kunz(self.kunz, other.kunz))

    def __or__(self, other: "NormalizedIdeal") -> "NormalizedIdeal":
        self._same(other)
        return NormalizedIdeal(self.ambient, union_kunz(self.kunz, other.kunz))

    def __and__(self, other: "NormalizedIdeal") -> "NormalizedIdeal":
        self._same(other)
        return NormalizedIdeal(self.ambient, intersect_kunz(self.kunz, other.kunz))

    def issubset(self, other: "NormalizedIdeal") -> bool:
        self._same(other)
        return includes(self.kunz, other.kunz)

    def apery(self) -> list[int]:
        m = self.m
        return [0] + [m * x + i for i, x in enumerate(self.kunz, start=1)]

    def gap_count(self) -> int:
        return sum(self.kunz)

    def is_idempotent(self) -> bool:
        return is_idempotent(self)

    def elements_upto(self, bound: int) -> list[int]:
        return [n for n in range(bound + 1) if n in self]

    def to_json(self) -> dict:
        return {"ambient": list(self.ambient.minimal_generators), "kunz": list(self.kunz)}

    @classmethod
    def from_json(cls, data: dict | str) -> "NormalizedIdeal":
        if isinstance(data, str):
            data = json.loads(data)
        S = NumericalSemigroup.from_generators(data["ambient"])
        return from_kunz(S, data["kunz"])

    def __str__(self) -> str:
        return f"{self.kunz}_K"


def from_kunz(S: NumericalSemigroup, v: Iterable[int]) -> NormalizedIdeal:
    v = KunzVector(v)
    why = ideal_violation(S, v)
    if why is not None:
        raise NotAnIdeal(f"{v} is not an ideal of {S}: {why}")
    return NormalizedIdeal(S, v)


def from_generator_set(S: NumericalSemigroup, X: Iterable[int]) -> NormalizedIdeal:
    """The ideal ``X + S`` for a finite ``X`` containing 0."""
    X = set(X)
    if 0 not in X:
        raise NotNormalized(f"0 not in {sorted(X)}")
    if min(X) < 0:
        raise NotNormalized(f"negative element in {sorted(X)}")
    m = S.multiplicity
    ap = S.apery_set
    out = []
    for i in range(1, m):
        first = min(x + ap[(i - x) % m] for x in X)
        out.append((first - i) // m)
    return NormalizedIdeal(S, KunzVector(out))


def gap_count(I: NormalizedIdeal) -> int:
    return sum(I.kunz)


def is_idempotent(I: NormalizedIdeal) -> bool:
    v = I.kunz
    if len(v) == 2:
        a, b = v
        return not (2 * b + 1 < a) and not (2 * a < b)
    return sum_kunz(v, v) == v


def minimal_generators_of_ideal(I: NormalizedIdeal) -> set[int]:
    """Minimal elements of I under ``a <= b iff b - a in S``; these lie in Ap(I)."""
    S = I.ambient
    ap = I.apery()
    return {w for w in ap if not any(u != w and (w - u) in S for u in ap)}


def max_gap(I: NormalizedIdeal) -> int:
    f = max_gap_kunz(I.kunz)
    if f < 0:
        raise FullSet("N has no gaps")
    return f
