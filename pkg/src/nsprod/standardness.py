"""Classification of normal subgroups of direct products.

A normal subgroup N of G1 x G2 is standard when N = N1 x N2 for normal
subgroups of the factors, equivalently when |N| equals the product of its
two projection orders. Whether every normal subgroup of the product is
standard is decided here two independent ways: through prime sets of
quotient-center orders, and through a direct scan of quotient-center
pairs. When the answer is no, an explicit non-standard witness is built
as a fiber product over an isomorphism of central sections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    InternalInvariantViolation,
    NotASubgroup,
    NotNormal,
    PreconditionViolated,
)
from .groups import (
    Caps,
    DEFAULT_CAPS,
    ElementSet,
    FiniteGroup,
    ProductGroup,
    center,
    direct_product,
    element_orders,
    ensure_same_group,
    prime_factors,
    require_subgroup,
    subgroup_as_group,
    subgroup_witness,
)
from .iso import Isomorphism, have_common_subgroup
from .lattice import (
    QuotientGroup,
    all_normal_subgroups,
    generated_subgroup,
    intersect_with_factor,
    is_normal,
    project,
    quotient,
)


@dataclass(frozen=True, eq=False)
class NsViolation:
    """Normal subgroups whose quotient centers share an order-p subgroup."""

    h1: ElementSet
    h2: ElementSet
    prime: int


@dataclass(frozen=True, eq=False)
class NsReport:
    """Outcome of one of the two product-condition criteria.

    prime_set_i collects the primes dividing any |Z(G_i/H)|; the condition
    holds exactly when the two sets are disjoint. pairs_scanned is filled
    by the direct criterion only.
    """

    prime_set_1: frozenset[int]
    prime_set_2: frozenset[int]
    holds: bool
    violation: Optional[NsViolation]
    pairs_scanned: Optional[int] = None

    def __post_init__(self):
        if self.holds != (not (self.prime_set_1 & self.prime_set_2)):
            raise InternalInvariantViolation(
                "criterion outcome disagrees with prime-set disjointness"
            )
        if not self.holds and self.violation is None:
            raise InternalInvariantViolation("failing report must carry a violation")


def _ns_center_data(g: FiniteGroup) -> list[tuple[ElementSet, FiniteGroup]]:
    """(H, Z(G/H) as a group) for every normal H, cached on g."""
    cached = g._cache.get("ns_center_data")
    if cached is None:
        cached = []
        for h in all_normal_subgroups(g):
            q = quotient(g, h)
            z = center(q.group)
            cached.append((h, subgroup_as_group(z, label=f"Z({q.group.label})")))
        g._cache["ns_center_data"] = cached
    return cached


def ns_prime_sets(g: FiniteGroup) -> frozenset[int]:
    """Primes dividing |Z(G/H)| for some normal H of g."""
    cached = g._cache.get("ns_primes")
    if cached is None:
        primes: set[int] = set()
        for _, z in _ns_center_data(g):
            primes |= prime_factors(z.order)
        cached = frozenset(primes)
        g._cache["ns_primes"] = cached
    return cached


def satisfies_ns_gcd(g1: FiniteGroup, g2: FiniteGroup) -> NsReport:
    """Decide the condition by disjointness of the two prime sets.

    On failure the violating pair is located deterministically: the
    smallest shared prime p, then on each side the first normal subgroup
    (in enumeration order) whose quotient center has order divisible by p.
    """
    s1 = ns_prime_sets(g1)
    s2 = ns_prime_sets(g2)
    shared = s1 & s2
    if not shared:
        return NsReport(s1, s2, True, None)
    p = min(shared)
    h1 = next(h for h, z in _ns_center_data(g1) if z.order % p == 0)
    h2 = next(h for h, z in _ns_center_data(g2) if z.order % p == 0)
    return NsReport(s1, s2, False, NsViolation(h1, h2, p))


def satisfies_ns_direct(g1: FiniteGroup, g2: FiniteGroup) -> NsReport:
    """Decide the condition by scanning all (H1, H2) quotient-center pairs.

    Each pair is asked whether the two centers share a nontrivial subgroup;
    the scan stops at the first violating pair.
    """
    data1 = _ns_center_data(g1)
    data2 = _ns_center_data(g2)
    s1 = ns_prime_sets(g1)
    s2 = ns_prime_sets(g2)
    count = 0
    for h1, z1 in data1:
        for h2, z2 in data2:
            count += 1
            w = have_common_subgroup(z1, z2)
            if w is not None:
                return NsReport(s1, s2, False, NsViolation(h1, h2, w.prime), pairs_scanned=count)
    return NsReport(s1, s2, True, None, pairs_scanned=count)


@dataclass(frozen=True)
class PairwiseNs:
    """Result of checking the condition over all pairs of a list."""

    holds: bool
    failing_pair: Optional[tuple[int, int]]  # 1-based positions


def pairwise_ns(groups: Sequence[FiniteGroup]) -> PairwiseNs:
    """Check the condition for every unordered pair, in index order."""
    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            if not satisfies_ns_gcd(groups[i], groups[j]).holds:
                return PairwiseNs(False, (i + 1, j + 1))
    return PairwiseNs(True, None)


@dataclass(frozen=True, eq=False)
class GoursatData:
    """Correspondence data of one normal subgroup of a product.

    h1, h2 are the slices along the factors, p1, p2 the projections; q1,
    q2 are the section quotients p_i/h_i and iso identifies them. The
    subgroup is exactly the fiber product: pairs whose cosets correspond
    under iso.
    """

    h1: ElementSet
    h2: ElementSet
    p1: ElementSet
    p2: ElementSet
    q1: QuotientGroup
    q2: QuotientGroup
    iso: Isomorphism


@dataclass(frozen=True, eq=False)
class StandardnessVerdict:
    """One normal subgroup of a product with its classification."""

    subgroup: ElementSet
    standard: bool
    factors: Optional[tuple[ElementSet, ElementSet]]
    goursat: Optional[GoursatData]


def section_quotient(g: FiniteGroup, h: ElementSet, k: ElementSet) -> QuotientGroup:
    """K/H for subgroups H <= K of g, as a quotient of K reindexed 0..|K|-1."""
    ensure_same_group(h.parent, g, "H and G")
    ensure_same_group(k.parent, g, "K and G")
    require_subgroup(k)
    if not h.members <= k.members:
        raise NotASubgroup("H is not contained in K")
    sub = subgroup_as_group(k, label=f"{g.label}|{len(k)}")
    mem = k.index_array()
    h_positions = np.searchsorted(mem, h.index_array())
    return quotient(sub, ElementSet(sub, h_positions))


def goursat_extract(p: ProductGroup, n: ElementSet) -> GoursatData:
    """Extract and verify the correspondence data of a normal subgroup.

    The slices h_i are normal in the factors, the sections p_i/h_i land in
    the centers of G_i/h_i, and matching first against second coordinates
    of n induces a well-defined isomorphism between the sections. Any
    failure of these construction-guaranteed facts raises
    InternalInvariantViolation.
    """
    if not is_normal(p.group, n):
        raise NotNormal(f"subgroup of order {len(n)} is not normal in {p.group.label!r}")
    h1 = intersect_with_factor(p, 1, n)
    h2 = intersect_with_factor(p, 2, n)
    p1 = project(p, 1, n)
    p2 = project(p, 2, n)
    for factor, h, pr in ((p.left, h1, p1), (p.right, h2, p2)):
        try:
            q_full = quotient(factor, h)
        except (NotASubgroup, NotNormal) as exc:
            raise InternalInvariantViolation(f"slice is not a normal subgroup: {exc}") from exc
        z = center(q_full.group).bool_array()
        if not bool(z[q_full.project[pr.index_array()]].all()):
            raise InternalInvariantViolation("section is not central in the factor quotient")
    try:
        q1 = section_quotient(p.left, h1, p1)
        q2 = section_quotient(p.right, h2, p2)
    except (NotASubgroup, NotNormal) as exc:
        raise InternalInvariantViolation(f"section quotient failed: {exc}") from exc

    mem1 = p1.index_array()
    mem2 = p2.index_array()
    pairs = n.index_array()
    a1 = np.searchsorted(mem1, pairs // p.right_order)
    a2 = np.searchsorted(mem2, pairs % p.right_order)
    c1 = q1.project[a1]
    c2 = q2.project[a2]
    mapping = np.full(q1.group.order, -1, dtype=np.int64)
    for x, y in zip(c1.tolist(), c2.tolist()):
        if mapping[x] < 0:
            mapping[x] = y
        elif mapping[x] != y:
            raise InternalInvariantViolation("coset matching is not well defined")
    if bool((mapping < 0).any()):
        raise InternalInvariantViolation("coset matching does not cover the section")
    try:
        iso = Isomorphism(q1.group, q2.group, tuple(int(v) for v in mapping))
    except ValueError as exc:
        raise InternalInvariantViolation(f"coset matching is not an isomorphism: {exc}") from exc
    data = GoursatData(h1=h1, h2=h2, p1=p1, p2=p2, q1=q1, q2=q2, iso=iso)
    if goursat_reconstruct(p, data) != n:
        raise InternalInvariantViolation("fiber product does not rebuild the subgroup")
    return data


def goursat_reconstruct(p: ProductGroup, data: GoursatData) -> ElementSet:
    """Fiber product of the correspondence data: the encoded normal subgroup."""
    mem1 = data.p1.index_array()
    mem2 = data.p2.sorted_members()
    coset_members_2: list[list[int]] = [
        [mem2[j] for j in sorted(c.members)] for c in data.q2.cosets
    ]
    r = p.right_order
    out: list[int] = []
    for pos, a1 in enumerate(mem1.tolist()):
        c2 = data.iso.mapping[int(data.q1.project[pos])]
        out.extend(a1 * r + b for b in coset_members_2[c2])
    return ElementSet(p.group, out)


def classify_normal_subgroups(p: ProductGroup, *, caps: Caps = DEFAULT_CAPS) -> list[StandardnessVerdict]:
    """Classify every normal subgroup of the product, in enumeration order.

    A subgroup is standard exactly when its order equals the product of
    its two projection orders; standard ones are reported with the factor
    pair, the rest with their full correspondence data.
    """
    cached = p.group._cache.get("classify")
    if cached is not None:
        return cached
    verdicts: list[StandardnessVerdict] = []
    for n in all_normal_subgroups(p.group):
        p1 = project(p, 1, n)
        p2 = project(p, 2, n)
        if len(n) == len(p1) * len(p2):
            verdicts.append(
                StandardnessVerdict(subgroup=n, standard=True, factors=(p1, p2), goursat=None)
            )
        else:
            data = goursat_extract(p, n)
            verdicts.append(
                StandardnessVerdict(subgroup=n, standard=False, factors=None, goursat=data)
            )
    p.group._cache["classify"] = verdicts
    return verdicts


def all_normal_subgroups_standard(p: ProductGroup, *, caps: Caps = DEFAULT_CAPS) -> bool:
    return all(v.standard for v in classify_normal_subgroups(p, caps=caps))


def _require_named(cond: bool, name: str) -> None:
    if not cond:
        raise PreconditionViolated(name)


def _central_mod(g: FiniteGroup, h: ElementSet, k: ElementSet) -> bool:
    """True iff the image of K in G/H is central, i.e. [G, K] <= H."""
    t = g.table
    kmem = k.index_array()
    gk = t[:, kmem]  # g*k
    conj = t[gk, g.inverse[:, None]]  # g*k*g^-1
    comm = t[conj, g.inverse[kmem][None, :]]  # g*k*g^-1*k^-1
    return bool(h.bool_array()[comm].all())


def build_nonstandard_witness(
    g1: FiniteGroup,
    g2: FiniteGroup,
    h1: ElementSet,
    h2: ElementSet,
    k1: ElementSet,
    k2: ElementSet,
    f: Isomorphism,
    *,
    caps: Caps = DEFAULT_CAPS,
) -> ElementSet:
    """Non-standard normal subgroup of g1 x g2 from matched central sections.

    Requires normal h_i, subgroups h_i <= k_i with k_i/h_i nontrivial and
    central in g_i/h_i, and f an isomorphism k1/h1 -> k2/h2 (as built by
    section_quotient). The witness is the fiber product
    {(a1, a2) in k1 x k2 : f(a1 h1) = a2 h2}; it is normal because the
    sections are central, and non-standard because it projects onto k_i
    while omitting pairs, so its order is strictly below |k1| * |k2|.
    """
    _require_named(h1.parent == g1, "H1 must live in G1")
    _require_named(h2.parent == g2, "H2 must live in G2")
    _require_named(k1.parent == g1, "K1 must live in G1")
    _require_named(k2.parent == g2, "K2 must live in G2")
    for name, s in (("H1", h1), ("H2", h2), ("K1", k1), ("K2", k2)):
        _require_named(subgroup_witness(s) is None, f"{name} must be a subgroup")
    _require_named(is_normal(g1, h1), "H1 must be normal in G1")
    _require_named(is_normal(g2, h2), "H2 must be normal in G2")
    _require_named(h1.members <= k1.members, "H1 must be contained in K1")
    _require_named(h2.members <= k2.members, "H2 must be contained in K2")
    _require_named(len(k1) > len(h1), "K1/H1 must be nontrivial")
    _require_named(len(k2) > len(h2), "K2/H2 must be nontrivial")
    _require_named(_central_mod(g1, h1, k1), "K1/H1 must be central in G1/H1")
    _require_named(_central_mod(g2, h2, k2), "K2/H2 must be central in G2/H2")
    q1 = section_quotient(g1, h1, k1)
    q2 = section_quotient(g2, h2, k2)
    _require_named(f.domain == q1.group, "f must start at K1/H1")
    _require_named(f.codomain == q2.group, "f must end at K2/H2")

    p = direct_product(g1, g2, caps=caps)
    mem1 = k1.index_array()
    mem2 = k2.sorted_members()
    coset_members_2 = [[mem2[j] for j in sorted(c.members)] for c in q2.cosets]
    r = p.right_order
    out: list[int] = []
    for pos, a1 in enumerate(mem1.tolist()):
        c2 = f.mapping[int(q1.project[pos])]
        out.extend(a1 * r + b for b in coset_members_2[c2])
    witness = ElementSet(p.group, out)

    if not is_normal(p.group, witness):
        raise InternalInvariantViolation("constructed fiber product is not normal")
    w1 = project(p, 1, witness)
    w2 = project(p, 2, witness)
    if len(witness) == len(w1) * len(w2):
        raise InternalInvariantViolation("constructed fiber product is standard")
    return witness


def find_ns_violation_witness(
    g1: FiniteGroup, g2: FiniteGroup, *, caps: Caps = DEFAULT_CAPS
) -> Optional[ElementSet]:
    """A non-standard normal subgroup of g1 x g2, or None when none exists.

    When the gcd criterion fails at (H1, H2, p), each side contributes the
    preimage K_i of an order-p central subgroup of G_i/H_i; matching the
    two p-element sections cyclically gives the fiber-product witness.
    """
    report = satisfies_ns_gcd(g1, g2)
    if report.holds:
        return None
    v = report.violation
    k1, q1, c1 = _central_section(g1, v.h1, v.prime)
    k2, q2, c2 = _central_section(g2, v.h2, v.prime)
    mapping = np.full(v.prime, -1, dtype=np.int64)
    x, y = 0, 0
    for _ in range(v.prime):
        mapping[x] = y
        x = int(q1.group.table[x, c1])
        y = int(q2.group.table[y, c2])
    f = Isomorphism(q1.group, q2.group, tuple(int(t) for t in mapping))
    return build_nonstandard_witness(g1, g2, v.h1, v.h2, k1, k2, f, caps=caps)


def _central_section(g: FiniteGroup, h: ElementSet, p: int) -> tuple[ElementSet, QuotientGroup, int]:
    """Preimage K of an order-p central subgroup of g/h, its quotient K/H,
    and the coset index generating K/H."""
    qg = quotient(g, h)
    z = center(qg.group)
    zorders = element_orders(qg.group)
    cands = [m for m in sorted(z.members) if zorders[m] == p]
    if not cands:
        raise InternalInvariantViolation(
            f"center of {qg.group.label!r} has no element of order {p}"
        )
    z0 = cands[0]
    cyc = generated_subgroup(qg.group, [z0])
    k = ElementSet(g, np.flatnonzero(np.isin(qg.project, cyc.index_array())))
    q = section_quotient(g, h, k)
    lift = int(np.flatnonzero(qg.project == z0)[0])
    c = int(q.project[int(np.searchsorted(k.index_array(), lift))])
    return k, q, c


def sum_of_normal_orders(g: FiniteGroup) -> int:
    """Sum of |N| over all normal subgroups of g."""
    return sum(len(s) for s in all_normal_subgroups(g))


def is_leinster_perfect(g: FiniteGroup) -> bool:
    """True iff the normal subgroup orders sum to exactly 2|g|."""
    return sum_of_normal_orders(g) == 2 * g.order
