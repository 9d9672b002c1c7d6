"""Exhaustive checks over multiplicity-3 semigroups, quark classification, and
recovery of a semigroup from its unlabeled ideal poset."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import networkx as nx
import numpy as np

from .errors import NotMultiplicityThreePoset, UnknownCheckName, WrongMultiplicity
from .ideal import NormalizedIdeal, from_generator_set, is_idempotent
from .kunz import (
    KunzVector,
    includes,
    intersect_kunz,
    kunz_wrt,
    member,
    oracle_kunz_from_set,
    oracle_staircase_set,
    sum_kunz,
    union_kunz,
)
from .poset import (
    AbstractPoset,
    IdealPoset,
    _Coder,
    covers_of,
    depth,
    down_set,
    enumerate_ideals,
    glb,
    ideal_poset,
    is_lattice,
    join,
    longest_paths_up,
    lub,
    meet,
    preceq_row,
    quarks,
    subseteq_row,
    unique_cover,
    up_set,
)
from .semigroup import (
    Classification,
    NumericalSemigroup,
    multiplicity_three_upto,
    semigroups_upto,
)

# -- quarks ------------------------------------------------------------------


@dataclass(frozen=True)
class QuarkReport:
    semigroup: NumericalSemigroup
    quark_kunz: list[KunzVector]
    quark_depths: list[int]
    classification: Classification

    def lines(self) -> list[str]:
        out = [
            f"semigroup: {self.semigroup}",
            f"classification: {self.classification}",
            f"quarks: {len(self.quark_kunz)}",
        ]
        for v, d in zip(self.quark_kunz, self.quark_depths):
            out.append(f"  {v} depth {d}")
        return out


def predicted_quarks(S: NumericalSemigroup) -> set[KunzVector]:
    """Closed-form quark set for a multiplicity-3 semigroup."""
    if S.multiplicity != 3:
        raise WrongMultiplicity(f"{S} has multiplicity {S.multiplicity}")
    cls = S.classify()
    f = S.frobenius
    if cls is Classification.SYMMETRIC:
        return {from_generator_set(S, {0, f}).kunz}
    if cls is Classification.PSEUDO_SYMMETRIC:
        return {from_generator_set(S, {0, f}).kunz, from_generator_set(S, {0, f // 2}).kunz}
    k1, k2 = S.kunz
    third = (k2 - k1, k2) if k1 <= k2 else (k1, k1 - k2 - 1)
    return {KunzVector((k1 - 1, k2)), KunzVector((k1, k2 - 1)), KunzVector(third)}


def quark_report(S: NumericalSemigroup, P: IdealPoset | None = None) -> QuarkReport:
    if S.multiplicity != 3:
        raise WrongMultiplicity(f"{S} has multiplicity {S.multiplicity}, expected 3")
    P = P or ideal_poset(S)
    qs = quarks(P)
    return QuarkReport(
        semigroup=S,
        quark_kunz=[q.kunz for q in qs],
        quark_depths=[depth(P, P.index_of(q)) for q in qs],
        classification=S.classify(),
    )


# -- reconstruction ----------------------------------------------------------


@dataclass(frozen=True)
class ReconstructionResult:
    genus: int
    quark_count: int
    odd_quark_depth: int | None
    recovered: NumericalSemigroup


def _digraph(n: int, edges: Iterable[tuple[int, int]]) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def isomorphic(a: AbstractPoset, b: AbstractPoset) -> bool:
    if a.node_count != b.node_count or len(a.cover_edges) != len(b.cover_edges):
        return False
    return nx.is_isomorphic(_digraph(a.node_count, a.cover_edges), _digraph(b.node_count, b.cover_edges))


def reconstruct(P: AbstractPoset, check: bool = True) -> ReconstructionResult:
    """Recover the multiplicity-3 semigroup whose ideal poset has these cover edges."""
    bottom, top = P.validate()
    succ = P.successors()
    if all(len(s) <= 1 for s in succ):
        raise NotMultiplicityThreePoset(
            f"chain on {P.node_count} nodes: every <2,2k+1> gives a chain, multiplicity 3 never does"
        )
    depths = longest_paths_up(P.node_count, P.cover_edges)
    g = depths[bottom]
    qs = succ[bottom]
    d = None
    if len(qs) == 1:
        f = 2 * g - 1
        gens = [3, 3 * g - f, f + 3]
    elif len(qs) == 2:
        f = 2 * g - 2
        gens = [3, 3 * g - f, f + 3]
    elif len(qs) == 3:
        low = [depths[q] for q in qs if depths[q] < g - 1]
        if len(low) != 1:
            raise NotMultiplicityThreePoset(f"expected one quark of depth < {g - 1}, got {low}")
        d = low[0]
        r = (g + d) % 3
        if r == 0:
            k1, k2 = (2 * g - d) // 3, (g + d) // 3
        elif r == 2:
            k1, k2 = (g + d + 1) // 3, (2 * g - d - 1) // 3
        else:
            raise NotMultiplicityThreePoset(f"g + d = {g + d} is 1 mod 3")
        if k1 < 1 or k2 < 1 or k1 > 2 * k2 + 1 or k2 > 2 * k1:
            raise NotMultiplicityThreePoset(f"({k1},{k2}) is not a multiplicity-3 semigroup")
        gens = [3, 3 * k1 + 1, 3 * k2 + 2]
    else:
        raise NotMultiplicityThreePoset(f"{len(qs)} quarks; multiplicity 3 has 1, 2 or 3")
    S = NumericalSemigroup.from_generators(gens)
    if S.multiplicity != 3 or S.genus != g:
        raise NotMultiplicityThreePoset(f"candidate {S} has the wrong shape")
    if check and not isomorphic(P, AbstractPoset.from_poset(ideal_poset(S))):
        raise NotMultiplicityThreePoset(f"input is not order isomorphic to the poset of {S}")
    return ReconstructionResult(genus=g, quark_count=len(qs), odd_quark_depth=d, recovered=S)


def relabel(P: AbstractPoset, seed: int = 0) -> AbstractPoset:
    """Same poset with node ids permuted, to strip any ordering information."""
    perm = list(range(P.node_count))
    random.Random(seed).shuffle(perm)
    return AbstractPoset(P.node_count, tuple((perm[a], perm[b]) for a, b in P.cover_edges))


# -- inclusion versus the additive order -------------------------------------


def coincidence_list(max_genus: int) -> list[NumericalSemigroup]:
    """Semigroups for which inclusion and the additive order agree, up to genus."""
    sporadic = [[3, 4], [3, 4, 5], [3, 5], [3, 5, 7]]
    family = [[2, 2 * k + 1] for k in range(max_genus + 1)]
    out = [NumericalSemigroup.from_generators(g) for g in sporadic + family]
    return sorted((s for s in out if s.genus <= max_genus), key=_sg_key)


def _sg_key(s: NumericalSemigroup):
    return (s.genus, s.multiplicity, s.minimal_generators)


def orders_coincide(S: NumericalSemigroup) -> bool:
    """Whether inclusion equals the additive order on the ideals of S.

    Compares the two relations row by row and stops at the first difference.
    Rows of ideals generated by ``{0, a}`` and ``{0, a, b}`` are tried first; the
    order affects only speed.
    """
    P = enumerate_ideals(S)
    coder = _Coder(P)
    m = S.multiplicity
    first = []
    for a in range(1, 2 * m):
        first.append(from_generator_set(S, {0, a}).kunz)
        for b in range(a + 1, 2 * m):
            first.append(from_generator_set(S, {0, a, b}).kunz)
    seen = set()
    order = []
    for v in first:
        i = P.index_of(v)
        if i not in seen:
            seen.add(i)
            order.append(i)
    order += [i for i in range(len(P)) if i not in seen]
    for i in order:
        if not np.array_equal(preceq_row(P, i, coder), subseteq_row(P, i)):
            return False
    return True


def order_coincidence_sweep(max_genus: int) -> list[NumericalSemigroup]:
    found = [S for S in semigroups_upto(max_genus) if orders_coincide(S)]
    return sorted(found, key=_sg_key)


# -- per-instance checks -----------------------------------------------------


def _fmt(P: IdealPoset, *idx: int) -> str:
    return ", ".join(str(P.kunz(i)) for i in idx)


def check_lattice(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    ok, pair = is_lattice(P)
    if not ok:
        return f"not a lattice at {_fmt(P, *pair)}"
    n = len(P)
    for i in range(n):
        for j in range(n):
            if join(P, i, j) != lub(P, i, j):
                return f"join formula fails at {_fmt(P, i, j)}"
            if meet(P, i, j) != glb(P, i, j):
                return f"meet formula fails at {_fmt(P, i, j)}"
    return None


def check_covers(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    for i, I in enumerate(P.ideals):
        if P.idempotent_mask[i]:
            continue
        cs = covers_of(P, i)
        c = unique_cover(I)
        if cs != [P.index_of(c)]:
            return f"{I.kunz} has covers {[str(P.kunz(j)) for j in cs]}, expected {c.kunz}"
        if sum(I.kunz) - sum(c.kunz) != 1:
            return f"cover of {I.kunz} removes more than one element"
    bad = sum_stability_violations(P, only_moving=True)
    if bad:
        i, j = bad[0]
        return f"I + L != I^c + L for I = {P.kunz(i)}, L = {P.kunz(j)}"
    return None


def sum_stability_violations(P: IdealPoset, only_moving: bool = False) -> list[tuple[int, int]]:
    """Pairs (I, L), I non-idempotent, with ``I + L != I^c + L``.

    With ``only_moving`` the pairs with ``I + L == I`` are skipped; the identity
    cannot hold there (take L = S), and it does hold for every other L.
    """
    A = P.array
    out = []
    for i, I in enumerate(P.ideals):
        if P.idempotent_mask[i]:
            continue
        c = unique_cover(I).kunz
        for j in range(len(P)):
            s = sum_kunz(I.kunz, A[j])
            if only_moving and s == I.kunz:
                continue
            if s != sum_kunz(c, A[j]):
                out.append((i, j))
    return out


def check_cover_injectivity(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    seen: dict[KunzVector, KunzVector] = {}
    for i, I in enumerate(P.ideals):
        if P.idempotent_mask[i]:
            continue
        c = unique_cover(I).kunz
        if c in seen:
            return f"{seen[c]} and {I.kunz} share the cover {c}"
        seen[c] = I.kunz
    return None


def check_quarks(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    rep = quark_report(S, P)
    want = {Classification.SYMMETRIC: 1, Classification.PSEUDO_SYMMETRIC: 2,
            Classification.NON_IRREDUCIBLE: 3}[rep.classification]
    if len(rep.quark_kunz) != want:
        return f"{len(rep.quark_kunz)} quarks for a {rep.classification} semigroup"
    if set(rep.quark_kunz) != predicted_quarks(S):
        return f"quarks {sorted(map(str, rep.quark_kunz))} != {sorted(map(str, predicted_quarks(S)))}"
    if rep.classification is Classification.NON_IRREDUCIBLE:
        g = S.genus
        low = [d for d in rep.quark_depths if d < g - 1]
        if len(low) != 1 or sorted(rep.quark_depths).count(g - 1) != 2:
            return f"quark depths {rep.quark_depths} with genus {g}"
        if (g + low[0]) % 3 not in (0, 2):
            return f"g + d = {g + low[0]} is 1 mod 3"
        if len(S.special_gaps()) != 2 or S.special_gaps() != S.pseudo_frobenius():
            return f"SG = {S.special_gaps()} vs PF = {S.pseudo_frobenius()}"
    return None


def check_depth(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    for i, I in enumerate(P.ideals):
        if depth(P, i) != sum(I.kunz):
            return f"depth({I.kunz}) = {depth(P, i)}"
    return None


def check_reconstruction(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    abstract = relabel(AbstractPoset.from_poset(P), seed=sum(S.minimal_generators))
    got = reconstruct(abstract).recovered
    if got != S:
        return f"recovered {got}"
    return None


def check_order_eq(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    equal = bool(np.array_equal(P.preceq, P.subseteq))
    listed = S in coincidence_list(S.genus)
    if equal != listed:
        return f"inclusion == additive order is {equal}, listed is {listed}"
    return None


def oracle_bound(S: NumericalSemigroup) -> int:
    return 3 * (S.genus + 2) ** 2


def _mask_of(elements: list[int], bound: int) -> np.ndarray:
    out = np.zeros(bound + 1, dtype=bool)
    out[elements] = True
    return out


def _kunz_of_mask(mask: np.ndarray, m: int) -> KunzVector:
    return oracle_kunz_from_set(np.flatnonzero(mask).tolist(), m)


def check_sum_oracle(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    m = S.multiplicity
    bound = oracle_bound(S)
    masks = {I.kunz: _mask_of(oracle_staircase_set(I.kunz, bound), bound) for I in P.ideals}
    for I in P.ideals:
        a = I.kunz
        if sum(a) != int((~masks[a]).sum()):
            return f"gap count of {a}"
        if any(member(a, n) != bool(masks[a][n]) for n in range(bound + 1)) or member(a, -1):
            return f"membership of {a}"
    for I in P.ideals:
        for J in P.ideals:
            a, b = I.kunz, J.kunz
            ma, mb = masks[a], masks[b]
            minkowski = np.convolve(ma.astype(np.int64), mb.astype(np.int64))[: bound + 1] > 0
            got, want = sum_kunz(a, b), _kunz_of_mask(minkowski, m)
            if got != want:
                return f"{a} + {b}: formula {got}, oracle {want}"
            if union_kunz(a, b) != _kunz_of_mask(ma | mb, m):
                return f"union of {a}, {b}"
            if intersect_kunz(a, b) != _kunz_of_mask(ma & mb, m):
                return f"intersection of {a}, {b}"
            if includes(a, b) != bool(np.all(mb[ma])):
                return f"inclusion of {a} in {b}"
    return None


def reexpress(I: NormalizedIdeal, m: int) -> KunzVector:
    """Kunz coordinates modulo ``m`` of an ideal of a possibly smaller-multiplicity semigroup."""
    return kunz_wrt(lambda n: n in I, m, limit=I.m * (max(I.kunz, default=0) + 1) + m)


def check_upset_oversemigroup(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    m = S.multiplicity
    for i, I in enumerate(P.ideals):
        if not P.idempotent_mask[i]:
            continue
        T = NumericalSemigroup.from_kunz(I.kunz)
        own = {reexpress(J, m) for J in enumerate_ideals(T).ideals}
        up = {P.kunz(j) for j in up_set(P, i)}
        if own != up:
            return f"up-set of {I.kunz} differs from the ideals of {T}"
    return None


def check_union_eq_sum(S: NumericalSemigroup, P: IdealPoset) -> str | None:
    over = [i for i in range(len(P)) if P.idempotent_mask[i]]
    for i in over:
        for j in over:
            a, b = P.kunz(i), P.kunz(j)
            if sum_kunz(a, b) != union_kunz(a, b):
                return f"{a} + {b} != {a} | {b}"
    for i in range(len(P)):
        for j in over:
            a, b = P.kunz(i), P.kunz(j)
            if includes(a, b) != (sum_kunz(a, b) == b):
                return f"inclusion vs absorption for {a}, {b}"
            if bool(P.preceq[j, i]) != (sum_kunz(a, b) == a):
                return f"order vs absorption for idempotent {b} and {a}"
            if join(P, i, j) != P.index_of(sum_kunz(a, b)):
                return f"join with idempotent {b} is not the sum"
    return None


CHECKS: dict[str, Callable[[NumericalSemigroup, IdealPoset], str | None]] = {
    "lattice": check_lattice,
    "covers": check_covers,
    "cover-injectivity": check_cover_injectivity,
    "quarks": check_quarks,
    "depth": check_depth,
    "reconstruction": check_reconstruction,
    "order-eq": check_order_eq,
    "sum-oracle": check_sum_oracle,
    "upset-oversemigroup": check_upset_oversemigroup,
    "union-eq-sum": check_union_eq_sum,
}


@dataclass
class CheckReport:
    check: str
    max_genus: int
    instances: int = 0
    failures: list[dict] = field(default_factory=list)
    semigroups: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "max_genus": self.max_genus,
            "instances": self.instances,
            "failures": self.failures,
        }


def _run_instance(args: tuple[tuple[int, ...], tuple[str, ...]]) -> dict[str, str | None]:
    gens, names = args
    S = NumericalSemigroup.from_generators(gens)
    P = ideal_poset(S)
    out = {}
    for name in names:
        try:
            out[name] = CHECKS[name](S, P)
        except Exception as exc:  # a crash is a failed check, not an aborted sweep
            out[name] = f"{type(exc).__name__}: {exc}"
    return out


def verify_suite(max_genus: int, checks: Iterable[str] | None = None, workers: int = 1) -> list[CheckReport]:
    """Run the named checks over every multiplicity-3 semigroup of genus <= max_genus."""
    names = tuple(checks) if checks is not None else tuple(CHECKS)
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise UnknownCheckName(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    sgs = multiplicity_three_upto(max_genus)
    jobs = [(s.minimal_generators, names) for s in sgs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_instance, jobs))
    else:
        results = [_run_instance(j) for j in jobs]
    reports = []
    for name in names:
        rep = CheckReport(name, max_genus)
        for s, res in zip(sgs, results):
            rep.instances += 1
            rep.semigroups.append(str(s))
            if res[name] is not None:
                rep.failures.append({"semigroup": list(s.minimal_generators), "detail": res[name]})
        reports.append(rep)
    return reports


def reports_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1)
