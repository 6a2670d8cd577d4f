"""Isomorphism testing and the shared-subgroup predicate."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapExceeded, InternalInvariantViolation
from .groups import (
    Caps,
    DEFAULT_CAPS,
    ElementSet,
    FiniteGroup,
    center,
    conjugacy_classes,
    element_orders,
    prime_factors,
)
from .lattice import _mul_closure, generated_subgroup


@dataclass(frozen=True)
class InvariantSignature:
    """Cheap isomorphism invariants used to screen candidate pairs."""

    order: int
    abelian: bool
    element_order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    class_sizes: tuple[int, ...]


def signature(g: FiniteGroup) -> InvariantSignature:
    cached = g._cache.get("signature")
    if cached is not None:
        return cached
    hist = tuple(sorted(Counter(element_orders(g).tolist()).items()))
    t = g.table
    comm = t[t, g.inverse[t.T]]  # comm[a, b] = (a*b)*(b*a)^-1
    derived = _mul_closure(t, np.unique(comm))
    sig = InvariantSignature(
        order=g.order,
        abelian=g.is_abelian,
        element_order_histogram=hist,
        center_order=len(center(g)),
        derived_order=int(derived.sum()),
        class_sizes=tuple(sorted(len(c) for c in conjugacy_classes(g))),
    )
    g._cache["signature"] = sig
    return sig


def derived_subgroup(g: FiniteGroup) -> ElementSet:
    """Subgroup generated by all commutators."""
    t = g.table
    comm = t[t, g.inverse[t.T]]
    return ElementSet(g, np.flatnonzero(_mul_closure(t, np.unique(comm))))


@dataclass(frozen=True, eq=False)
class Isomorphism:
    """Bijective homomorphism, fully verified on construction."""

    domain: FiniteGroup
    codomain: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self):
        m = np.asarray(self.mapping, dtype=np.int64)
        if m.shape != (self.domain.order,) or self.domain.order != self.codomain.order:
            raise ValueError("mapping length must match both orders")
        if not np.array_equal(np.sort(m), np.arange(self.codomain.order)):
            raise ValueError("mapping is not a bijection")
        if m[0] != 0:
            raise ValueError("mapping must send identity to identity")
        if not np.array_equal(m[self.domain.table], self.codomain.table[np.ix_(m, m)]):
            raise ValueError("mapping is not a homomorphism")

    def apply(self, a: int) -> int:
        return self.mapping[a]

    def inverse(self) -> "Isomorphism":
        inv = [0] * len(self.mapping)
        for a, b in enumerate(self.mapping):
            inv[b] = a
        return Isomorphism(self.codomain, self.domain, tuple(inv))

    def __repr__(self) -> str:
        return f"<Isomorphism {self.domain.label!r} -> {self.codomain.label!r}>"


def minimal_generating_set(g: FiniteGroup) -> tuple[int, ...]:
    """Irredundant generating set: greedy adjoin, then drop carried passengers.

    Greedy alone can keep an element that later picks become able to
    express (adjoining -1 then i in the quaternions leaves -1 = i^2
    redundant), so a pruning pass re-checks every kept generator.
    """
    gens: list[int] = []
    covered = _mul_closure(g.table, np.empty(0, dtype=np.int64))
    while int(covered.sum()) < g.order:
        gens.append(int(np.argmax(~covered)))
        covered = _mul_closure(g.table, np.asarray(gens, dtype=np.int64))
    for cand in list(gens):
        rest = [x for x in gens if x != cand]
        if int(_mul_closure(g.table, np.asarray(rest, dtype=np.int64)).sum()) == g.order:
            gens = rest
    return tuple(gens)


def find_isomorphism(g1: FiniteGroup, g2: FiniteGroup, *, caps: Caps = DEFAULT_CAPS) -> Optional[Isomorphism]:
    """An isomorphism g1 -> g2, or None.

    Screens with cheap invariants, then backtracks over images of a
    greedy generating set; each tentative image pair is closed under
    products against everything already mapped, rejecting on conflict.
    """
    if max(g1.order, g2.order) > caps.iso:
        raise CapExceeded(
            f"isomorphism search capped at order {caps.iso}, got {g1.order} and {g2.order}"
        )
    if g1.order != g2.order:
        return None
    if signature(g1) != signature(g2):
        return None
    n = g1.order
    if n == 1:
        return Isomorphism(g1, g2, (0,))

    gens = minimal_generating_set(g1)
    orders1 = element_orders(g1)
    orders2 = element_orders(g2)
    candidates = [
        [t for t in range(n) if orders2[t] == orders1[s]]
        for s in gens
    ]
    T1 = g1.table.tolist()
    T2 = g2.table.tolist()
    mapping = [-1] * n
    rev = [-1] * n
    mapping[0] = 0
    rev[0] = 0
    known: list[int] = [0]

    def try_extend(s: int, t: int) -> Optional[list[int]]:
        added: list[int] = []
        stack = [(s, t)]
        while stack:
            a, b = stack.pop()
            ma = mapping[a]
            if ma != -1:
                if ma != b:
                    _rollback(added)
                    return None
                continue
            if rev[b] != -1:
                _rollback(added)
                return None
            mapping[a] = b
            rev[b] = a
            known.append(a)
            added.append(a)
            row1, row2 = T1[a], T2[b]
            for c in known:
                mc = mapping[c]
                stack.append((row1[c], row2[mc]))
                stack.append((T1[c][a], T2[mc][b]))
        return added

    def _rollback(added: list[int]) -> None:
        for a in reversed(added):
            rev[mapping[a]] = -1
            mapping[a] = -1
            known.pop()

    def backtrack(i: int) -> bool:
        if i == len(gens):
            return True
        s = gens[i]
        for t in candidates[i]:
            if rev[t] != -1:
                continue
            added = try_extend(s, t)
            if added is not None:
                if backtrack(i + 1):
                    return True
                _rollback(added)
        return False

    if not backtrack(0):
        return None
    if -1 in mapping:
        raise InternalInvariantViolation("generating set did not cover the group")
    return Isomorphism(g1, g2, tuple(mapping))


@dataclass(frozen=True)
class CommonSubgroupWitness:
    """Isomorphic nontrivial subgroups, one per group, of prime order."""

    prime: int
    subgroup1: ElementSet
    subgroup2: ElementSet


def _cyclic_subgroup_of_order(g: FiniteGroup, p: int) -> ElementSet:
    hits = np.flatnonzero(element_orders(g) == p)
    if hits.size == 0:
        raise InternalInvariantViolation(
            f"{g.label!r} has no element of order {p} although {p} divides {g.order}"
        )
    return generated_subgroup(g, [int(hits[0])])


def have_common_subgroup(g1: FiniteGroup, g2: FiniteGroup) -> Optional[CommonSubgroupWitness]:
    """Witness that g1 and g2 share a nontrivial subgroup up to isomorphism.

    Such a pair exists iff gcd(|g1|, |g2|) > 1: any shared prime divisor
    yields order-p cyclic subgroups on both sides, and conversely a shared
    subgroup has an order dividing both.
    """
    d = math.gcd(g1.order, g2.order)
    if d == 1:
        return None
    p = min(prime_factors(d))
    return CommonSubgroupWitness(p, _cyclic_subgroup_of_order(g1, p), _cyclic_subgroup_of_order(g2, p))
