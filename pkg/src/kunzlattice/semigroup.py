"""Numerical semigroups stored through their Apéry set with respect to the multiplicity."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Iterator

from .errors import EmptyInput, FullMonoid, NotCoFinite, NotSpecialGap, WrongMultiplicity
from .kunz import KunzVector, kunz_wrt, sum_kunz


class Classification(enum.Enum):
    SYMMETRIC = "symmetric"
    PSEUDO_SYMMETRIC = "pseudo-symmetric"
    NON_IRREDUCIBLE = "non-irreducible"

    def __str__(self) -> str:
        return self.value


def apery_round_robin(gens: list[int]) -> list[int]:
    """Apéry set of ``<gens>`` with respect to ``min(gens)`` (round-robin shortest paths).

    Returns ``w`` with ``w[i]`` the least element congruent to ``i``; classes that
    are never reached stay ``None``.
    """
    m = min(gens)
    w: list[int | None] = [None] * m
    w[0] = 0
    for a in sorted(set(gens)):
        if a == m:
            continue
        d = gcd(a, m)
        for r in range(d):
            reached = [w[q] for q in range(r, m, d) if w[q] is not None]
            if not reached:
                continue
            n = min(reached)
            for _ in range(m // d):
                n += a
                p = n % m
                if w[p] is not None and w[p] < n:
                    n = w[p]
                w[p] = n
    return w


@dataclass(frozen=True)
class NumericalSemigroup:
    minimal_generators: tuple[int, ...]
    multiplicity: int
    apery_set: tuple[int, ...]
    kunz: KunzVector
    frobenius: int
    genus: int

    # -- construction --------------------------------------------------------

    @classmethod
    def from_generators(cls, gens: Iterable[int]) -> "NumericalSemigroup":
        gens = [int(g) for g in gens]
        if not gens:
            raise EmptyInput("no generators given")
        if any(g <= 0 for g in gens):
            raise ValueError(f"generators must be positive: {gens}")
        if reduce(gcd, gens) != 1:
            raise NotCoFinite(f"gcd{tuple(gens)} = {reduce(gcd, gens)} != 1")
        return cls._from_apery(apery_round_robin(gens))

    @classmethod
    def from_kunz(cls, kunz: Iterable[int]) -> "NumericalSemigroup":
        """Semigroup whose Kunz coordinates (w.r.t. ``len + 1``) are ``kunz``.

        The vector only needs to describe an additively closed set; the
        multiplicity of the result may be smaller than ``len(kunz) + 1``.
        """
        kunz = KunzVector(kunz)
        if sum_kunz(kunz, kunz) != kunz:
            raise ValueError(f"{kunz} is not closed under addition")
        m = kunz.m
        return cls.from_generators([m] + [m * x + i for i, x in enumerate(kunz, start=1)])

    @classmethod
    def parse(cls, text: str) -> "NumericalSemigroup":
        parts = [t for t in text.replace(" ", "").split(",") if t]
        if not parts:
            raise EmptyInput("empty generator string")
        return cls.from_generators(int(t) for t in parts)

    @classmethod
    def _from_apery(cls, w: list[int]) -> "NumericalSemigroup":
        m = len(w)
        if any(x is None for x in w):
            raise NotCoFinite("generators do not reach every residue class")
        kunz = KunzVector((w[i] - i) // m for i in range(1, m))

        def inside(n: int) -> bool:
            return n >= 0 and n >= w[n % m]

        nonzero = [x for x in w if x]
        mingens = [m] + [
            x for x in nonzero if not any(y != x and inside(x - y) for y in nonzero)
        ]
        frob = max(w) - m if m > 1 else -1
        return cls(
            minimal_generators=tuple(sorted(mingens)),
            multiplicity=m,
            apery_set=tuple(w),
            kunz=kunz,
            frobenius=frob,
            genus=sum(kunz),
        )

    # -- queries -------------------------------------------------------------

    def __contains__(self, n: int) -> bool:
        return n >= 0 and n >= self.apery_set[n % self.multiplicity]

    def contains(self, n: int) -> bool:
        return n in self

    def is_full(self) -> bool:
        return self.multiplicity == 1

    def gaps(self) -> list[int]:
        return [n for n in range(self.frobenius + 1) if n not in self]

    def elements_upto(self, bound: int) -> list[int]:
        return [n for n in range(bound + 1) if n in self]

    def kunz_wrt(self, m: int) -> KunzVector:
        """Kunz coordinates of this semigroup viewed as a staircase set modulo ``m``."""
        return kunz_wrt(self.contains, m, limit=self.frobenius + 2 * m + 1)

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.minimal_generators)) + ">"

    def generator_string(self) -> str:
        return ",".join(map(str, self.minimal_generators))

    # -- invariants ----------------------------------------------------------

    def _require_proper(self) -> None:
        if self.is_full():
            raise FullMonoid("S = N has no gaps")

    def pseudo_frobenius(self) -> set[int]:
        """PF(S), read off the maximal Apéry elements under the order induced by S."""
        self._require_proper()
        m = self.multiplicity
        ap = [w for w in self.apery_set if w]
        return {w - m for w in ap if not any(v != w and (v - w) in self for v in ap)}

    def type(self) -> int:
        return len(self.pseudo_frobenius())

    def special_gaps(self) -> set[int]:
        return {g for g in self.pseudo_frobenius() if 2 * g in self}

    def classify(self) -> Classification:
        self._require_proper()
        if self.multiplicity < 2:
            raise WrongMultiplicity("classification needs multiplicity >= 2")
        pf = self.pseudo_frobenius()
        f = self.frobenius
        if len(pf) == 1:
            return Classification.SYMMETRIC
        if f % 2 == 0 and pf == {f // 2, f}:
            return Classification.PSEUDO_SYMMETRIC
        return Classification.NON_IRREDUCIBLE

    def adjoin_gap(self, g: int) -> "NumericalSemigroup":
        self._require_proper()
        if g not in self.special_gaps():
            raise NotSpecialGap(f"{g} is not a special gap of {self}")
        return NumericalSemigroup.from_generators(self.minimal_generators + (g,))

    def oversemigroups(self) -> list["NumericalSemigroup"]:
        """All numerical semigroups T with S contained in T, ordered by genus descending."""
        found = []
        for v in itertools.product(*(range(k + 1) for k in self.kunz)):
            v = KunzVector(v)
            if sum_kunz(v, v) == v:
                found.append(v)
        found.sort(key=lambda v: (-sum(v), tuple(v)))
        return [NumericalSemigroup.from_kunz(v) for v in found]


def from_generators(gens: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup.from_generators(gens)


def multiplicity_three_semigroups(genus: int) -> list[NumericalSemigroup]:
    """All multiplicity-3 semigroups of the given genus, by Kunz pairs ``k1 + k2 = genus``."""
    out = []
    for k1 in range(1, genus):
        k2 = genus - k1
        if k1 <= 2 * k2 + 1 and k2 <= 2 * k1:
            out.append(NumericalSemigroup.from_kunz((k1, k2)))
    return out


def multiplicity_three_upto(max_genus: int) -> list[NumericalSemigroup]:
    return [s for g in range(max_genus + 1) for s in multiplicity_three_semigroups(g)]


def semigroups_of_genus(genus: int) -> Iterator[NumericalSemigroup]:
    """Every numerical semigroup of the given genus, walking the tree of semigroups.

    Children of S are ``S \\ {a}`` for minimal generators ``a > F(S)``.
    """
    level = [NumericalSemigroup.from_generators([1])]
    for _ in range(genus):
        nxt = []
        for s in level:
            for a in s.minimal_generators:
                if a > s.frobenius:
                    nxt.append(remove_generator(s, a))
        level = nxt
    yield from level


def semigroups_upto(max_genus: int) -> list[NumericalSemigroup]:
    return [s for g in range(max_genus + 1) for s in semigroups_of_genus(g)]


def remove_generator(s: NumericalSemigroup, a: int) -> NumericalSemigroup:
    """``S \\ {a}`` for a minimal generator ``a``."""
    if a not in s.minimal_generators:
        raise ValueError(f"{a} is not a minimal generator of {s}")
    rest = [g for g in s.minimal_generators if g != a]
    gens = rest + [a + g for g in rest] + [2 * a, 3 * a]
    t = NumericalSemigroup.from_generators(gens)
    assert a not in t and t.genus == s.genus + 1
    return t
