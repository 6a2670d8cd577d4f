"""Composition series, factor multisets, simplicity, shared-factor checks."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import CapExceeded, InternalInvariantViolation, OrderCapExceeded
from .groups import (
    Caps,
    DEFAULT_CAPS,
    ElementSet,
    FiniteGroup,
    element_orders,
    make_family,
    subgroup_as_group,
)
from .iso import InvariantSignature, find_isomorphism, signature
from .lattice import QuotientGroup, all_normal_subgroups, quotient

_POLICIES = ("largest", "smallest")


def is_simple(g: FiniteGroup) -> bool:
    """Nontrivial with no proper nontrivial normal subgroup."""
    return g.order > 1 and len(all_normal_subgroups(g)) == 2


def identify(g: FiniteGroup) -> Optional[str]:
    """Canonical family name of g if it is isomorphic to one, else None.

    Candidates are tried in a fixed order (cyclic, Klein-4, symmetric,
    alternating, dihedral, quaternion), so isomorphic aliases resolve to
    one name: the hexagon dihedral group reports as S3.
    """
    cached = g._cache.get("identify", "?")
    if cached != "?":
        return cached
    name = _identify(g)
    g._cache["identify"] = name
    return name


def _identify(g: FiniteGroup) -> Optional[str]:
    n = g.order
    if bool((element_orders(g) == n).any()):
        return f"C{n}"
    if n == 4:
        return "V4"  # the only non-cyclic group of order 4
    candidates: list[tuple[str, str, Optional[int]]] = []
    fact, m = 1, 1
    while fact < n:
        m += 1
        fact *= m
    if fact == n and m >= 3:
        candidates.append((f"S{m}", "symmetric", m))
    fact, m = 1, 1
    while fact < 2 * n:
        m += 1
        fact *= m
    if fact == 2 * n and m >= 4:
        candidates.append((f"A{m}", "alternating", m))
    if n % 2 == 0 and n >= 6:
        candidates.append((f"D{n // 2}", "dihedral", n // 2))
    if n == 8:
        candidates.append(("Q8", "quaternion8", None))
    for name, family, deg in candidates:
        try:
            cand = make_family(family, deg)
            if find_isomorphism(g, cand) is not None:
                return name
        except (OrderCapExceeded, CapExceeded):
            continue
    return None


class FactorLabel:
    """Isomorphism class of a group, compared up to isomorphism."""

    __slots__ = ("rep", "name", "order", "abelian", "sig")

    def __init__(self, rep: FiniteGroup):
        self.rep = rep
        self.name = identify(rep)
        self.order = rep.order
        self.abelian = rep.is_abelian
        self.sig = signature(rep)

    @property
    def display(self) -> str:
        if self.name is not None:
            return self.name
        digest = hashlib.sha1(repr(self.sig).encode()).hexdigest()[:8]
        return f"?{self.order}:{digest}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactorLabel):
            return NotImplemented
        if self.sig != other.sig:
            return False
        if self.name is not None and other.name is not None:
            return self.name == other.name
        try:
            return find_isomorphism(self.rep, other.rep) is not None
        except CapExceeded:
            return self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.sig)

    def __repr__(self) -> str:
        return f"FactorLabel({self.display})"


@dataclass(frozen=True, eq=False)
class CompositionSeries:
    """Ascending chain from the trivial subgroup to the whole group.

    factors[i] is the simple quotient chain[i+1] / chain[i], presented as
    a QuotientGroup of the step subgroup reindexed as a standalone group.
    """

    chain: tuple[ElementSet, ...]
    factors: tuple[QuotientGroup, ...]


def _pick_maximal_normal(g: FiniteGroup, policy: str) -> ElementSet:
    normals = all_normal_subgroups(g)
    proper = [s for s in normals if len(s) < g.order]
    maximal = [
        s
        for s in proper
        if not any(len(t) > len(s) and s.members < t.members for t in proper)
    ]
    if policy == "largest":
        maximal.sort(key=lambda s: (-len(s), s.sorted_members()))
    else:
        maximal.sort(key=lambda s: (len(s), s.sorted_members()))
    return maximal[0]


def composition_series(g: FiniteGroup, *, policy: str = "largest") -> CompositionSeries:
    """Composition series built by repeatedly cutting a maximal normal subgroup.

    policy picks among maximal proper normal subgroups at each step:
    "largest" or "smallest" order, ties broken by sorted member lists.
    Distinct policies may produce distinct chains, but the factor multiset
    is the same.
    """
    if policy not in _POLICIES:
        raise ValueError(f"policy must be one of {_POLICIES}")

    def rec(current: FiniteGroup, embed: np.ndarray) -> tuple[list[frozenset[int]], list[QuotientGroup]]:
        if current.order == 1:
            return [frozenset({int(embed[0])})], []
        m = _pick_maximal_normal(current, policy)
        q = quotient(current, m)
        sub = subgroup_as_group(m, label=f"{current.label}|{len(m)}")
        chain, factors = rec(sub, embed[m.index_array()])
        chain.append(frozenset(int(x) for x in embed))
        factors.append(q)
        return chain, factors

    chain_sets, factors = rec(g, np.arange(g.order))
    chain = tuple(ElementSet(g, s) for s in chain_sets)
    for qg in factors:
        if not is_simple(qg.group):
            raise InternalInvariantViolation("composition factor is not simple")
    return CompositionSeries(chain=chain, factors=tuple(factors))


class FactorMultiset:
    """Multiset of isomorphism classes, merged and compared up to isomorphism."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[tuple[FactorLabel, int]] = ()):
        self.entries: list[tuple[FactorLabel, int]] = []
        for label, mult in entries:
            self._add(label, mult)

    def _add(self, label: FactorLabel, mult: int) -> None:
        for i, (have, m) in enumerate(self.entries):
            if have == label:
                self.entries[i] = (have, m + mult)
                return
        self.entries.append((label, mult))

    @classmethod
    def from_factor_groups(cls, groups: Iterable[FiniteGroup]) -> "FactorMultiset":
        out = cls()
        for g in groups:
            out._add(FactorLabel(g), 1)
        return out

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, label: FactorLabel) -> int:
        for have, m in self.entries:
            if have == label:
                return m
        return 0

    def union(self, other: "FactorMultiset") -> "FactorMultiset":
        out = FactorMultiset(self.entries)
        for label, m in other.entries:
            out._add(label, m)
        return out

    def common(self, other: "FactorMultiset") -> list[FactorLabel]:
        """Labels present in both, abelian first then by (order, display)."""
        hits = [label for label, _ in self.entries if other.multiplicity(label) > 0]
        hits.sort(key=lambda l: (not l.abelian, l.order, l.display))
        return hits

    def as_pairs(self) -> list[tuple[str, int]]:
        ordered = sorted(self.entries, key=lambda e: (e[0].order, e[0].display))
        return [(label.display, m) for label, m in ordered]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactorMultiset):
            return NotImplemented
        if self.total() != other.total() or len(self.entries) != len(other.entries):
            return False
        return all(other.multiplicity(label) == m for label, m in self.entries)

    def __repr__(self) -> str:
        inner = ", ".join(f"{d}^{m}" if m > 1 else d for d, m in self.as_pairs())
        return f"FactorMultiset({{{inner}}})"


def multiset_disjoint_union(a: FactorMultiset, b: FactorMultiset) -> FactorMultiset:
    """Multiset union adding multiplicities."""
    return a.union(b)


def composition_factors(g: FiniteGroup, *, policy: str = "largest") -> FactorMultiset:
    """Multiset of simple factors of any composition series (policy-independent)."""
    cache_key = "composition_factors"
    cached = g._cache.get(cache_key)
    if cached is not None:
        return cached
    series = composition_series(g, policy=policy)
    out = FactorMultiset.from_factor_groups([q.group for q in series.factors])
    if math.prod(q.group.order for q in series.factors) != g.order:
        raise InternalInvariantViolation("factor orders do not multiply to the group order")
    g._cache[cache_key] = out
    return out


@dataclass(frozen=True)
class CommonFactor:
    """A composition factor shared by two groups."""

    label: FactorLabel
    abelian: bool


def leinster_common_member(g1: FiniteGroup, g2: FiniteGroup) -> Optional[CommonFactor]:
    """A common composition factor of g1 and g2, preferring abelian ones.

    Returns None when the factor multisets are disjoint; in that case every
    normal subgroup of the direct product is a product of one normal
    subgroup per side.
    """
    commons = composition_factors(g1).common(composition_factors(g2))
    if not commons:
        return None
    label = commons[0]
    return CommonFactor(label=label, abelian=label.abelian)
