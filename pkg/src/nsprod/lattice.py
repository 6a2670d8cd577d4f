"""Subgroup generation, normality tests, normal-subgroup enumeration, quotients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import MismatchedParent, NotNormal
from .groups import (
    ElementSet,
    FiniteGroup,
    ProductGroup,
    conjugacy_classes,
    ensure_same_group,
    require_subgroup,
)


def _mul_closure(table: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Membership mask of the subgroup generated by seed indices.

    Closing under the product alone is enough: in a finite group every
    inverse is a positive power.
    """
    n = table.shape[0]
    member = np.zeros(n, dtype=bool)
    member[0] = True
    if seed.size:
        member[seed] = True
    frontier = np.flatnonzero(member)
    while frontier.size:
        cur = np.flatnonzero(member)
        prods = np.unique(
            np.concatenate(
                [
                    table[np.ix_(frontier, cur)].ravel(),
                    table[np.ix_(cur, frontier)].ravel(),
                ]
            )
        )
        fresh = prods[~member[prods]]
        member[fresh] = True
        frontier = fresh
    return member


def generated_subgroup(g: FiniteGroup, gens: Iterable[int]) -> ElementSet:
    """Smallest subgroup of g containing gens."""
    seed = ElementSet(g, gens)  # validates the indices
    member = _mul_closure(g.table, seed.index_array())
    return ElementSet(g, np.flatnonzero(member))


def is_normal(g: FiniteGroup, s: ElementSet) -> bool:
    """True iff x s x^-1 = s for every x; raises if s is not a subgroup."""
    ensure_same_group(s.parent, g, "subgroup and group")
    require_subgroup(s)
    if len(s) in (1, g.order):
        return True
    mem = s.index_array()
    conj = g.table[g.table[:, mem], g.inverse[:, None]]  # (x*a)*x^-1
    return bool(s.bool_array()[conj].all())


def all_normal_subgroups(g: FiniteGroup) -> list[ElementSet]:
    """Every normal subgroup, ordered by (order, sorted members).

    A normal subgroup is a union of conjugacy classes closed under the
    product, so the lattice is the closure of the trivial subgroup under
    joins with class closures; the join of two normal subgroups is their
    set product, computed with a single gather.
    """
    cached = g._cache.get("normals")
    if cached is not None:
        return cached
    n = g.order
    table = g.table
    closures: list[np.ndarray] = []
    seen_closures: set[bytes] = set()
    for cls in conjugacy_classes(g):
        mask = _mul_closure(table, cls.index_array())
        key = mask.tobytes()
        if key not in seen_closures:
            seen_closures.add(key)
            closures.append(mask)
    triv = np.zeros(n, dtype=bool)
    triv[0] = True
    found: dict[bytes, np.ndarray] = {triv.tobytes(): triv}
    queue = [triv]
    while queue:
        cur = queue.pop()
        for mask in closures:
            if not bool((mask & ~cur).any()):  # mask subset of cur
                continue
            if not bool((cur & ~mask).any()):  # cur subset of mask
                join = mask
            else:
                join = np.zeros(n, dtype=bool)
                prods = table[np.ix_(np.flatnonzero(cur), np.flatnonzero(mask))]
                join[prods.ravel()] = True
            key = join.tobytes()
            if key not in found:
                found[key] = join
                queue.append(join)
    sets = [ElementSet(g, np.flatnonzero(m)) for m in found.values()]
    sets.sort(key=lambda s: (len(s), s.sorted_members()))
    g._cache["normals"] = sets
    return sets


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """Quotient G/N with its coset structure.

    project[a] is the coset index of a; cosets[i] lists that coset's
    elements in the parent; group is the quotient as a standalone group
    with the kernel at index 0.
    """

    parent: FiniteGroup
    kernel: ElementSet
    cosets: tuple[ElementSet, ...]
    group: FiniteGroup
    project: np.ndarray

    def project_of(self, a: int) -> int:
        return int(self.project[a])

    def __repr__(self) -> str:
        return f"<QuotientGroup {self.group.label!r} order={self.group.order}>"


def quotient(g: FiniteGroup, n: ElementSet) -> QuotientGroup:
    """Quotient by a normal subgroup; cosets indexed by smallest member."""
    ensure_same_group(n.parent, g, "subgroup and group")
    if not is_normal(g, n):
        raise NotNormal(f"subgroup of order {len(n)} is not normal in {g.label!r}")
    mem = n.index_array()
    coset_id = np.full(g.order, -1, dtype=np.int64)
    reps: list[int] = []
    for a in range(g.order):
        if coset_id[a] < 0:
            coset_id[g.table[a, mem]] = len(reps)  # the left coset a*N
            reps.append(a)
    rep_arr = np.asarray(reps, dtype=np.int64)
    qtable = coset_id[g.table[np.ix_(rep_arr, rep_arr)]]
    group = FiniteGroup(qtable, f"{g.label}/N{len(mem)}", unchecked=True)
    cosets = tuple(ElementSet(g, np.flatnonzero(coset_id == i)) for i in range(len(reps)))
    coset_id.setflags(write=False)
    return QuotientGroup(parent=g, kernel=n, cosets=cosets, group=group, project=coset_id)


def _check_side(side: int) -> None:
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side}")


def project(p: ProductGroup, side: int, s: ElementSet) -> ElementSet:
    """Image of s under the coordinate projection onto the given factor."""
    _check_side(side)
    ensure_same_group(s.parent, p.group, "set and product")
    arr = s.index_array()
    r = p.right_order
    if side == 1:
        return ElementSet(p.left, np.unique(arr // r))
    return ElementSet(p.right, np.unique(arr % r))


def intersect_with_factor(p: ProductGroup, side: int, s: ElementSet) -> ElementSet:
    """Slice of s along one factor: elements paired with the other identity."""
    _check_side(side)
    ensure_same_group(s.parent, p.group, "set and product")
    arr = s.index_array()
    r = p.right_order
    if side == 1:
        return ElementSet(p.left, arr[arr % r == 0] // r)
    return ElementSet(p.right, arr[arr // r == 0])
