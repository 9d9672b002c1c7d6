"""Kunz-coordinate arithmetic on staircase subsets of the non-negative integers.

A vector ``(x_1, ..., x_{m-1})`` stands for the set

    {q*m + i : 0 <= i < m, q >= x_i}      (with x_0 = 0)

so every operation here is exact integer arithmetic on thresholds. The
``oracle_*`` helpers work on explicit truncated sets instead and exist to
cross-check the formulas.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import BoundTooSmall, LengthMismatch


class KunzVector(tuple):
    """Immutable tuple of non-negative integers; the ambient multiplicity is ``len + 1``."""

    def __new__(cls, entries: Iterable[int] = ()):
        entries = tuple(int(e) for e in entries)
        if any(e < 0 for e in entries):
            raise ValueError(f"Kunz coordinates must be non-negative: {entries}")
        return super().__new__(cls, entries)

    @property
    def m(self) -> int:
        return len(self) + 1

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self) + ")"

    def __repr__(self) -> str:
        return f"KunzVector({str(self)})"

    @classmethod
    def parse(cls, text: str) -> "KunzVector":
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(int(t) for t in text.split(","))

    def to_json(self) -> list[int]:
        return list(self)

    def padded(self) -> tuple[int, ...]:
        """Coordinates with the implicit ``x_0 = 0`` prepended."""
        return (0,) + tuple(self)


def _check(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"Kunz vectors of different lengths: {tuple(a)} vs {tuple(b)}")


def sum_kunz(a: Sequence[int], b: Sequence[int]) -> KunzVector:
    """Kunz coordinates of the Minkowski sum of the two staircase sets.

    ``z_i = min(x_p + y_q + (p+q)//m : p + q = i mod m)`` over all ``m**2``
    index pairs, with ``x_0 = y_0 = 0`` included explicitly.
    """
    _check(a, b)
    m = len(a) + 1
    x = (0,) + tuple(a)
    y = (0,) + tuple(b)
    out = []
    for i in range(1, m):
        best = None
        for p in range(m):
            q = (i - p) % m
            val = x[p] + y[q] + (p + q) // m
            if best is None or val < best:
                best = val
        out.append(best)
    return KunzVector(out)


def union_kunz(a: Sequence[int], b: Sequence[int]) -> KunzVector:
    _check(a, b)
    return KunzVector(min(x, y) for x, y in zip(a, b))


def intersect_kunz(a: Sequence[int], b: Sequence[int]) -> KunzVector:
    _check(a, b)
    return KunzVector(max(x, y) for x, y in zip(a, b))


def includes(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff the set encoded by ``a`` is contained in the set encoded by ``b``."""
    _check(a, b)
    return all(y <= x for x, y in zip(a, b))


def member(v: Sequence[int], n: int) -> bool:
    if n < 0:
        return False
    m = len(v) + 1
    q, i = divmod(n, m)
    return i == 0 or q >= v[i - 1]


def max_gap_kunz(v: Sequence[int]) -> int:
    """Largest non-member, or -1 when ``v`` encodes all of N."""
    m = len(v) + 1
    gaps = [m * x + i - m for i, x in enumerate(v, start=1) if x > 0]
    return max(gaps) if gaps else -1


def kunz_wrt(contains, m: int, limit: int) -> KunzVector:
    """Kunz coordinates with respect to ``m`` of a set given by its membership test.

    ``limit`` bounds the search for the first member of each residue class.
    """
    out = []
    for i in range(1, m):
        q = 0
        while not contains(q * m + i):
            q += 1
            if q * m + i > limit:
                raise ValueError(f"no element of class {i} mod {m} below {limit}")
        out.append(q)
    return KunzVector(out)


# -- bulk (numpy) arithmetic -------------------------------------------------


def sum_kunz_many(a: Sequence[int], others: np.ndarray) -> np.ndarray:
    """Row-wise ``sum_kunz(a, row)`` for an ``(n, m-1)`` integer array."""
    others = np.asarray(others, dtype=np.int64)
    n, k = others.shape
    _check(a, range(k))
    m = k + 1
    x = np.array((0,) + tuple(a), dtype=np.int64)
    y = np.concatenate([np.zeros((n, 1), dtype=np.int64), others], axis=1)
    out = np.empty((n, k), dtype=np.int64)
    for i in range(1, m):
        cols = []
        for p in range(m):
            q = (i - p) % m
            cols.append(x[p] + y[:, q] + (p + q) // m)
        out[:, i - 1] = np.min(np.stack(cols, axis=1), axis=1)
    return out


def sum_kunz_pairwise(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Row-wise ``sum_kunz(xs[r], ys[r])`` for two ``(n, m-1)`` arrays."""
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    if xs.shape != ys.shape:
        raise LengthMismatch(f"shape mismatch {xs.shape} vs {ys.shape}")
    n, k = xs.shape
    m = k + 1
    zero = np.zeros((n, 1), dtype=np.int64)
    x = np.concatenate([zero, xs], axis=1)
    y = np.concatenate([zero, ys], axis=1)
    out = np.empty((n, k), dtype=np.int64)
    for i in range(1, m):
        best = None
        for p in range(m):
            q = (i - p) % m
            val = x[:, p] + y[:, q] + (p + q) // m
            best = val if best is None else np.minimum(best, val)
        out[:, i - 1] = best
    return out


# -- set-based oracle --------------------------------------------------------


def oracle_staircase_set(v: Sequence[int], bound: int) -> list[int]:
    """Explicit members of the staircase set in ``[0, bound]``, ascending."""
    m = len(v) + 1
    need = m * (1 + max(v, default=0))
    if bound < need:
        raise BoundTooSmall(f"bound {bound} < {need} for {tuple(v)}")
    x = (0,) + tuple(v)
    return [n for n in range(bound + 1) if n // m >= x[n % m]]


def oracle_minkowski(a: Iterable[int], b: Iterable[int], bound: int) -> list[int]:
    b = list(b)
    return sorted({s + t for s in a for t in b if s + t <= bound})


def oracle_kunz_from_set(elements: Iterable[int], m: int) -> KunzVector:
    """Read Kunz coordinates off an explicit (truncated) set containing 0."""
    first = {}
    for n in sorted(elements):
        first.setdefault(n % m, n)
    if 0 not in first or first[0] != 0:
        raise ValueError("set does not contain 0")
    missing = [i for i in range(1, m) if i not in first]
    if missing:
        raise BoundTooSmall(f"truncation misses residue classes {missing}")
    return KunzVector((first[i] - i) // m for i in range(1, m))
