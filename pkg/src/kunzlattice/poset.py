"""The poset of normalized ideals ordered by ``I <= J iff I + K = J for some ideal K``.

Relations are stored as boolean numpy matrices indexed by the position of each
ideal in ``IdealPoset.ideals``; up/down sets are cached as Python int bitmasks.
"""

from __future__ import annotations

import dataclasses
import graphlib
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IdempotentInput,
    InvalidPoset,
    NotALattice,
    UnsupportedMultiplicityForLayout,
    WrongMultiplicity,
)
from .ideal import NormalizedIdeal, is_idempotent
from .kunz import KunzVector, intersect_kunz, sum_kunz, sum_kunz_many, union_kunz
from .semigroup import NumericalSemigroup


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


@dataclass
class IdealPoset:
    ambient: NumericalSemigroup
    ideals: list[NormalizedIdeal]
    preceq: np.ndarray | None = None
    subseteq: np.ndarray | None = None
    covers: list[tuple[int, int]] = field(default_factory=list)
    idempotent_mask: list[bool] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.ideals)

    @cached_property
    def index(self) -> dict[KunzVector, int]:
        return {I.kunz: i for i, I in enumerate(self.ideals)}

    def index_of(self, v: Sequence[int] | NormalizedIdeal) -> int:
        if isinstance(v, NormalizedIdeal):
            v = v.kunz
        return self.index[KunzVector(v)]

    def kunz(self, i: int) -> KunzVector:
        return self.ideals[i].kunz

    @cached_property
    def array(self) -> np.ndarray:
        k = len(self.ambient.kunz)
        return np.array([I.kunz for I in self.ideals], dtype=np.int64).reshape(len(self), k)

    def _need_relations(self) -> None:
        if self.preceq is None:
            raise ValueError("relations not built; call build_preceq first")

    @cached_property
    def up_masks(self) -> list[int]:
        self._need_relations()
        return [_mask(np.flatnonzero(row)) for row in self.preceq]

    @cached_property
    def down_masks(self) -> list[int]:
        self._need_relations()
        return [_mask(np.flatnonzero(col)) for col in self.preceq.T]

    @cached_property
    def cover_lists(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.ideals]
        for lo, hi in self.covers:
            out[lo].append(hi)
        return out

    @cached_property
    def depths(self) -> list[int]:
        return longest_paths_up(len(self), self.covers)

    @property
    def m(self) -> int:
        return self.ambient.multiplicity


# -- enumeration -------------------------------------------------------------


def _sort_key(v: Sequence[int]):
    return (-sum(v), tuple(v))


def enumerate_ideals(S: NumericalSemigroup) -> IdealPoset:
    """All normalized ideals of S; index 0 is S itself and the last one is N."""
    k = S.kunz
    if len(k) == 2:
        u, v = k
        found = [
            (x, y)
            for x in range(u + 1)
            for y in range(v + 1)
            if x + u >= y and y + v + 1 >= x
        ]
    else:
        found = [tuple(r) for r in _closure_filter(k)]
    found.sort(key=_sort_key)
    ideals = [NormalizedIdeal(S, KunzVector(v)) for v in found]
    return IdealPoset(ambient=S, ideals=ideals, idempotent_mask=[is_idempotent(I) for I in ideals])


def _closure_filter(k: Sequence[int], chunk: int = 1 << 15) -> np.ndarray:
    """Vectors ``v <= k`` entrywise with ``v + S = v``."""
    if not k:
        return np.zeros((1, 0), dtype=np.int64)
    grids = itertools.product(*(range(x + 1) for x in k))
    keep = []
    while True:
        block = np.array(list(itertools.islice(grids, chunk)), dtype=np.int64)
        if block.size == 0:
            break
        ok = np.all(sum_kunz_many(k, block) == block, axis=1)
        keep.append(block[ok])
    return np.concatenate(keep, axis=0)


class _Coder:
    """Mixed-radix encoding of Kunz vectors bounded by the ambient coordinates."""

    def __init__(self, P: IdealPoset):
        radix = [x + 1 for x in P.ambient.kunz]
        strides = [1] * len(radix)
        for i in range(len(radix) - 2, -1, -1):
            strides[i] = strides[i + 1] * radix[i + 1]
        self.strides = np.array(strides, dtype=np.int64)
        size = int(np.prod(radix)) if radix else 1
        self.lookup = np.full(size, -1, dtype=np.int64)
        self.lookup[self.encode(P.array)] = np.arange(len(P))

    def encode(self, rows: np.ndarray) -> np.ndarray:
        if rows.shape[1] == 0:
            return np.zeros(rows.shape[0], dtype=np.int64)
        return rows @ self.strides

    def indices(self, rows: np.ndarray) -> np.ndarray:
        return self.lookup[self.encode(rows)]


def preceq_row(P: IdealPoset, i: int, coder: _Coder | None = None) -> np.ndarray:
    """Boolean row ``{j : I_i + K = I_j for some K}`` by trying every K."""
    coder = coder or _Coder(P)
    sums = sum_kunz_many(P.kunz(i), P.array)
    idx = coder.indices(sums)
    if np.any(idx < 0):
        raise AssertionError("sum of ideals fell outside the enumerated ideals")
    row = np.zeros(len(P), dtype=bool)
    row[idx] = True
    return row


def subseteq_row(P: IdealPoset, i: int) -> np.ndarray:
    return np.all(P.array <= P.array[i], axis=1)


def transitive_reduction(rel: np.ndarray) -> list[tuple[int, int]]:
    """Cover pairs of a partial order given as a reflexive boolean matrix."""
    n = rel.shape[0]
    strict = rel & ~np.eye(n, dtype=bool)
    s = strict.astype(np.int32)
    two_step = (s @ s) > 0
    lo, hi = np.nonzero(strict & ~two_step)
    return sorted(zip(lo.tolist(), hi.tolist()))


def build_preceq(P: IdealPoset) -> IdealPoset:
    """Fill both order relations by brute force and derive the Hasse edges."""
    n = len(P)
    coder = _Coder(P)
    pre = np.zeros((n, n), dtype=bool)
    sub = np.zeros((n, n), dtype=bool)
    for i in range(n):
        pre[i] = preceq_row(P, i, coder)
        sub[i] = subseteq_row(P, i)
    return dataclasses.replace(
        P,
        preceq=pre,
        subseteq=sub,
        covers=transitive_reduction(pre),
        idempotent_mask=[is_idempotent(I) for I in P.ideals],
    )


def ideal_poset(S: NumericalSemigroup) -> IdealPoset:
    return build_preceq(enumerate_ideals(S))


def preceq_via_covers(P: IdealPoset) -> np.ndarray:
    """Multiplicity-3 fast path for the order.

    A non-idempotent ideal's up-set is itself plus the up-set of its unique
    cover; an idempotent I lies below exactly the J with I + J = J.
    """
    if P.m != 3:
        raise WrongMultiplicity("cover ascent needs multiplicity 3")
    n = len(P)
    up = [0] * n
    order = sorted(range(n), key=lambda i: sum(P.kunz(i)))
    for i in order:
        I = P.ideals[i]
        if is_idempotent(I):
            sums = sum_kunz_many(I.kunz, P.array)
            up[i] = _mask(np.flatnonzero(np.all(sums == P.array, axis=1)))
        else:
            up[i] = (1 << i) | up[P.index_of(unique_cover(I))]
    rel = np.zeros((n, n), dtype=bool)
    for i, mask in enumerate(up):
        rel[i, _bits(mask)] = True
    return rel


# -- covers, quarks, depth ---------------------------------------------------


def unique_cover(I: NormalizedIdeal) -> NormalizedIdeal:
    if I.m != 3:
        raise WrongMultiplicity("unique covers are only guaranteed for multiplicity 3")
    a, b = I.kunz
    if 2 * b + 1 < a:
        return NormalizedIdeal(I.ambient, KunzVector((a - 1, b)))
    if 2 * a < b:
        return NormalizedIdeal(I.ambient, KunzVector((a, b - 1)))
    raise IdempotentInput(f"{I} is idempotent")


def covers_of(P: IdealPoset, i: int) -> list[int]:
    P._need_relations()
    return list(P.cover_lists[i])


def quarks(P: IdealPoset) -> list[NormalizedIdeal]:
    return [P.ideals[j] for j in covers_of(P, 0)]


def longest_paths_up(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """For each node, the edge count of the longest path to a sink of the DAG."""
    succ: list[list[int]] = [[] for _ in range(n)]
    ts = graphlib.TopologicalSorter({i: () for i in range(n)})
    for lo, hi in edges:
        succ[lo].append(hi)
        ts.add(hi, lo)
    try:
        order = list(ts.static_order())
    except graphlib.CycleError as exc:
        raise InvalidPoset("cover edges contain a cycle") from exc
    best = [0] * n
    for v in reversed(order):
        if succ[v]:
            best[v] = 1 + max(best[w] for w in succ[v])
    return best


def depth(P: IdealPoset, i: int) -> int:
    P._need_relations()
    return P.depths[i]


# -- lattice operations ------------------------------------------------------


def up_set(P: IdealPoset, i: int) -> set[int]:
    return set(_bits(P.up_masks[i]))


def down_set(P: IdealPoset, i: int) -> set[int]:
    return set(_bits(P.down_masks[i]))


def comparable(P: IdealPoset, i: int, j: int) -> bool:
    return bool(P.preceq[i, j] or P.preceq[j, i])


def lub(P: IdealPoset, i: int, j: int) -> int | None:
    """Least common upper bound by exhaustive search, None when it does not exist."""
    common = P.up_masks[i] & P.up_masks[j]
    for c in _bits(common):
        if common & ~P.up_masks[c] == 0:
            return c
    return None


def glb(P: IdealPoset, i: int, j: int) -> int | None:
    common = P.down_masks[i] & P.down_masks[j]
    for c in _bits(common):
        if common & ~P.down_masks[c] == 0:
            return c
    return None


def join(P: IdealPoset, i: int, j: int) -> int:
    P._need_relations()
    if P.m > 3:
        c = lub(P, i, j)
        if c is None:
            raise NotALattice(f"no least upper bound for {P.kunz(i)}, {P.kunz(j)}", (i, j))
        return c
    a, b = P.kunz(i), P.kunz(j)
    if comparable(P, i, j):
        return P.index_of(union_kunz(a, b))
    return P.index_of(sum_kunz(a, b))


def meet(P: IdealPoset, i: int, j: int) -> int:
    P._need_relations()
    if P.m > 3:
        c = glb(P, i, j)
        if c is None:
            raise NotALattice(f"no greatest lower bound for {P.kunz(i)}, {P.kunz(j)}", (i, j))
        return c
    if comparable(P, i, j):
        return P.index_of(intersect_kunz(P.kunz(i), P.kunz(j)))
    lower = _bits(P.down_masks[i] & P.down_masks[j])
    acc = lower[0]
    for k in lower[1:]:
        acc = join(P, acc, k)
    return acc


def is_lattice(P: IdealPoset) -> tuple[bool, tuple[int, int] | None]:
    P._need_relations()
    n = len(P)
    for i in range(n):
        for j in range(i + 1, n):
            if lub(P, i, j) is None or glb(P, i, j) is None:
                return False, (i, j)
    return True, None


# -- export ------------------------------------------------------------------


def hasse_edges(P: IdealPoset, order: str = "preceq") -> list[tuple[int, int]]:
    P._need_relations()
    if order == "preceq":
        return list(P.covers)
    if order == "subseteq":
        return transitive_reduction(P.subseteq)
    raise ValueError(f"unknown order {order!r}")


def export_hasse(
    P: IdealPoset,
    order: str = "preceq",
    format: str = "dot",
    positions: bool | None = None,
) -> str:
    """Hasse diagram as DOT or JSON text.

    ``positions`` adds ``pos`` hints from the Kunz coordinates; by default only
    for multiplicity 3.
    """
    edges = hasse_edges(P, order)
    depths = longest_paths_up(len(P), edges)
    if format == "json":
        data = {
            "ambient": list(P.ambient.minimal_generators),
            "nodes": [
                {
                    "id": i,
                    "kunz": list(I.kunz),
                    "idempotent": bool(P.idempotent_mask[i]),
                    "depth": depths[i],
                }
                for i, I in enumerate(P.ideals)
            ],
            "covers": [[lo, hi] for lo, hi in edges],
        }
        return json.dumps(data, indent=1)
    if format != "dot":
        raise ValueError(f"unknown format {format!r}")
    if positions and P.m != 3:
        raise UnsupportedMultiplicityForLayout(f"coordinate layout needs m = 3, got {P.m}")
    if positions is None:
        positions = P.m == 3
    lines = [f'digraph "{P.ambient}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, I in enumerate(P.ideals):
        attrs = [f'label="{",".join(map(str, I.kunz))}"']
        if P.idempotent_mask[i]:
            attrs.append("style=filled fillcolor=gray")
        if positions:
            x, y = I.kunz
            attrs.append(f'pos="{x},{y}!"')
        lines.append(f"  n{i} [{' '.join(attrs)}];")
    for lo, hi in edges:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- unlabeled posets --------------------------------------------------------


@dataclass(frozen=True)
class AbstractPoset:
    node_count: int
    cover_edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "cover_edges", tuple(sorted((int(a), int(b)) for a, b in self.cover_edges))
        )

    @classmethod
    def from_poset(cls, P: IdealPoset, order: str = "preceq") -> "AbstractPoset":
        return cls(len(P), tuple(hasse_edges(P, order)))

    @classmethod
    def from_json(cls, text: str | dict) -> "AbstractPoset":
        """Accepts the Hasse JSON export; node labels are ignored."""
        data = json.loads(text) if isinstance(text, str) else text
        if "nodes" in data:
            ids = [node["id"] for node in data["nodes"]]
            n = len(ids)
            if sorted(ids) != list(range(n)):
                raise InvalidPoset("node ids must be 0..n-1")
        else:
            n = int(data["node_count"])
        return cls(n, tuple(tuple(e) for e in data["covers"]))

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.node_count)]
        for lo, hi in self.cover_edges:
            out[lo].append(hi)
        return out

    def validate(self) -> tuple[int, int]:
        """Check the structure; returns (minimum, maximum)."""
        n = self.node_count
        if n < 1:
            raise InvalidPoset("empty poset")
        for lo, hi in self.cover_edges:
            if not (0 <= lo < n and 0 <= hi < n) or lo == hi:
                raise InvalidPoset(f"bad edge {(lo, hi)}")
        if len(set(self.cover_edges)) != len(self.cover_edges):
            raise InvalidPoset("duplicate edges")
        longest_paths_up(n, self.cover_edges)  # raises on cycles
        has_in = {hi for _, hi in self.cover_edges}
        has_out = {lo for lo, _ in self.cover_edges}
        mins = [v for v in range(n) if v not in has_in]
        maxs = [v for v in range(n) if v not in has_out]
        if len(mins) != 1 or len(maxs) != 1:
            raise InvalidPoset(f"need a unique minimum and maximum, got {mins} and {maxs}")
        reach = self.reachability()
        for lo, hi in self.cover_edges:
            for mid in range(n):
                if mid not in (lo, hi) and reach[lo] >> mid & 1 and reach[mid] >> hi & 1:
                    raise InvalidPoset(f"edge {(lo, hi)} is implied by transitivity")
        return mins[0], maxs[0]

    def reachability(self) -> list[int]:
        """Bitmask of nodes reachable from each node (itself included)."""
        succ = self.successors()
        n = self.node_count
        depths = longest_paths_up(n, self.cover_edges)
        reach = [1 << v for v in range(n)]
        for v in sorted(range(n), key=lambda v: depths[v]):
            for w in succ[v]:
                reach[v] |= reach[w]
        return reach

    def to_json(self) -> str:
        return json.dumps({"node_count": self.node_count, "covers": [list(e) for e in self.cover_edges]})
