"""Finite groups as validated Cayley tables over 0-based element indices.

table[a, b] is the product a*b and the identity always sits at index 0.
Constructors relabel or reject anything else, so downstream code may rely
on index 0 without checking.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    InvalidCayleyFile,
    MismatchedParent,
    NotAGroup,
    NotASubgroup,
    OrderCapExceeded,
)

_DTYPE = np.int32


@dataclass(frozen=True)
class Caps:
    """Size limits for constructions.

    single: largest order accepted for a directly supplied table, and the
        bound up to which associativity is verified in full.
    product: largest order of a direct product.
    symmetric_n, alternating_n: largest degree of the permutation families.
    iso: largest order the isomorphism search will take on.
    """

    single: int = 512
    product: int = 4096
    symmetric_n: int = 7
    alternating_n: int = 7
    iso: int = 400


DEFAULT_CAPS = Caps()


def prime_factors(n: int) -> frozenset[int]:
    """Primes dividing n; empty for n <= 1."""
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return frozenset(out)


def _first_duplicate_positions(row: np.ndarray) -> tuple[int, int, int]:
    seen: dict[int, int] = {}
    for j, v in enumerate(row.tolist()):
        if v in seen:
            return seen[v], j, v
        seen[v] = j
    raise AssertionError("no duplicate present")


def _validate_table(arr: np.ndarray, *, unchecked: bool, assoc_limit: int) -> np.ndarray:
    """Check the group axioms on arr; return the inverse array."""
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise NotAGroup("table is not square with side >= 1", witness=arr.shape)
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        flat = int(np.argmax((arr < 0) | (arr >= n)))
        a, b = divmod(flat, n)
        raise NotAGroup("entry out of range", witness=(a, b, int(arr[a, b])))
    ident = np.arange(n, dtype=_DTYPE)
    if not np.array_equal(arr[0], ident):
        b = int(np.argmax(arr[0] != ident))
        raise NotAGroup("identity law fails at index 0", witness=(0, b, int(arr[0, b])))
    if not np.array_equal(arr[:, 0], ident):
        a = int(np.argmax(arr[:, 0] != ident))
        raise NotAGroup("identity law fails at index 0", witness=(a, 0, int(arr[a, 0])))
    row_perm = (np.sort(arr, axis=1) == ident).all(axis=1)
    if not bool(row_perm.all()):
        bad = int(np.argmax(~row_perm))
        j1, j2, v = _first_duplicate_positions(arr[bad])
        raise NotAGroup(
            f"row {bad} is not a permutation, value {v} repeats",
            witness=(bad, j1, j2),
        )
    col_perm = (np.sort(arr.T, axis=1) == ident).all(axis=1)
    if not bool(col_perm.all()):
        bad = int(np.argmax(~col_perm))
        i1, i2, v = _first_duplicate_positions(arr[:, bad])
        raise NotAGroup(
            f"column {bad} is not a permutation, value {v} repeats",
            witness=(bad, i1, i2),
        )
    inv = np.argmax(arr == 0, axis=1).astype(_DTYPE)
    two_sided = arr[inv, np.arange(n)] == 0
    if not bool(two_sided.all()):
        a = int(np.argmax(~two_sided))
        raise NotAGroup(
            f"left and right inverses of {a} differ",
            witness=(a, int(inv[a]), int(arr[int(inv[a]), a])),
        )
    if n > assoc_limit:
        if not unchecked:
            raise OrderCapExceeded(
                f"order {n} exceeds the checked-construction cap {assoc_limit}; "
                "pass unchecked=True only for tables known associative"
            )
    else:
        for a in range(n):
            lhs = arr[arr[a]]  # lhs[b, c] = (a*b)*c
            rhs = arr[a][arr]  # rhs[b, c] = a*(b*c)
            if not np.array_equal(lhs, rhs):
                b, c = divmod(int(np.argmax(lhs != rhs)), n)
                raise NotAGroup("associativity fails", witness=(a, b, c))
    return inv


class FiniteGroup:
    """Immutable finite group over element indices 0..order-1."""

    __slots__ = ("order", "table", "inverse", "label", "element_names", "_key", "_cache")

    identity = 0

    def __init__(
        self,
        table,
        label: str = "G",
        *,
        element_names: Optional[Sequence[str]] = None,
        unchecked: bool = False,
        assoc_limit: int = DEFAULT_CAPS.single,
    ):
        arr = np.array(table, dtype=_DTYPE)
        inv = _validate_table(arr, unchecked=unchecked, assoc_limit=assoc_limit)
        arr.setflags(write=False)
        inv.setflags(write=False)
        self.order = int(arr.shape[0])
        self.table = arr
        self.inverse = inv
        self.label = label
        if element_names is not None:
            if len(element_names) != self.order:
                raise ValueError("element_names length must match the order")
            self.element_names = tuple(str(s) for s in element_names)
        else:
            self.element_names = None
        self._key = hashlib.sha1(arr.tobytes()).digest()
        self._cache: dict = {}

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element_order(self, a: int) -> int:
        """Smallest k >= 1 with a^k = identity."""
        k, x = 1, a
        while x != 0:
            x = int(self.table[x, a])
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        cached = self._cache.get("abelian")
        if cached is None:
            cached = bool((self.table == self.table.T).all())
            self._cache["abelian"] = cached
        return cached

    def name_of(self, a: int) -> str:
        if self.element_names is not None:
            return self.element_names[a]
        return str(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.label!r} order={self.order}>"


def ensure_same_group(g1: FiniteGroup, g2: FiniteGroup, what: str = "operands") -> None:
    if g1 != g2:
        raise MismatchedParent(f"{what} belong to different groups ({g1.label!r} vs {g2.label!r})")


def element_orders(g: FiniteGroup) -> np.ndarray:
    """Orders of all elements, cached on the group."""
    cached = g._cache.get("element_orders")
    if cached is None:
        cached = np.fromiter((g.element_order(a) for a in g.elements()), dtype=np.int64, count=g.order)
        cached.setflags(write=False)
        g._cache["element_orders"] = cached
    return cached


class ElementSet:
    """Subset of one group's elements: a subgroup, coset or conjugacy class."""

    __slots__ = ("parent", "members")

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        ms = frozenset(int(m) for m in members)
        for m in ms:
            if not 0 <= m < parent.order:
                raise MismatchedParent(
                    f"element {m} is outside {parent.label!r} of order {parent.order}"
                )
        self.parent = parent
        self.members = ms

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def index_array(self) -> np.ndarray:
        return np.fromiter(sorted(self.members), dtype=np.int64, count=len(self.members))

    def bool_array(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        if self.members:
            mask[self.index_array()] = True
        return mask

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.parent == other.parent
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.members))

    def __repr__(self) -> str:
        shown = sorted(self.members)
        if len(shown) > 12:
            inner = ", ".join(map(str, shown[:12])) + ", ..."
        else:
            inner = ", ".join(map(str, shown))
        return f"ElementSet({self.parent.label!r}, [{inner}])"


def subgroup_witness(s: ElementSet):
    """None if s is a subgroup, else (reason, witness) for the first failure."""
    if 0 not in s.members:
        return ("identity missing", 0)
    mem = s.index_array()
    prods = s.parent.table[np.ix_(mem, mem)]
    inside = s.bool_array()
    bad = ~inside[prods]
    if bool(bad.any()):
        i, j = divmod(int(np.argmax(bad)), len(mem))
        return ("not closed under the product", (int(mem[i]), int(mem[j])))
    return None


def require_subgroup(s: ElementSet) -> None:
    w = subgroup_witness(s)
    if w is not None:
        raise NotASubgroup(f"{w[0]} (witness {w[1]}) in {s.parent.label!r}")


class ProductGroup:
    """Direct product; the pair (a, b) is encoded as a * right.order + b."""

    __slots__ = ("group", "left", "right")

    def __init__(self, group: FiniteGroup, left: FiniteGroup, right: FiniteGroup):
        self.group = group
        self.left = left
        self.right = right

    @property
    def left_order(self) -> int:
        return self.left.order

    @property
    def right_order(self) -> int:
        return self.right.order

    def encode(self, a: int, b: int) -> int:
        return a * self.right.order + b

    def decode(self, x: int) -> tuple[int, int]:
        return divmod(x, self.right.order)

    def __repr__(self) -> str:
        return f"<ProductGroup {self.group.label!r} = {self.left.label!r} x {self.right.label!r}>"


def from_cayley_table(table, label: str = "G", *, unchecked: bool = False, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Build a group from a raw table, relabeling so the identity is index 0."""
    arr = np.array(table, dtype=_DTYPE)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise NotAGroup("table is not square with side >= 1", witness=arr.shape)
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        flat = int(np.argmax((arr < 0) | (arr >= n)))
        a, b = divmod(flat, n)
        raise NotAGroup("entry out of range", witness=(a, b, int(arr[a, b])))
    ident = np.arange(n, dtype=_DTYPE)
    row_ok = (arr == ident).all(axis=1)
    col_ok = (arr.T == ident).all(axis=1)
    both = np.flatnonzero(row_ok & col_ok)
    if both.size == 0:
        raise NotAGroup("no identity element")
    e = int(both[0])
    if e != 0:
        sigma = np.arange(n, dtype=_DTYPE)
        sigma[0], sigma[e] = e, 0
        arr = sigma[arr[np.ix_(sigma, sigma)]]
    return FiniteGroup(arr, label, unchecked=unchecked, assoc_limit=caps.single)


def _cyclic_table(n: int) -> np.ndarray:
    r = np.arange(n, dtype=_DTYPE)
    return (np.add.outer(r, r) % n).astype(_DTYPE)


def _perm_parity(p: Sequence[int]) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv % 2


def _cycle_name(p: Sequence[int]) -> str:
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        parts.append("(" + "".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) if parts else "e"


def _perm_group(perms: list[tuple[int, ...]], label: str) -> FiniteGroup:
    """Group of the given lexicographically sorted permutations under composition.

    The product p*q maps x to p[q[x]], i.e. q is applied first.
    """
    deg = len(perms[0]) if perms[0] else 1
    m = len(perms)
    if m == 1:
        return FiniteGroup([[0]], label, element_names=["e"], unchecked=True)
    P = np.array(perms, dtype=np.int64)
    powv = (deg ** np.arange(deg - 1, -1, -1)).astype(np.int64)
    keys = P @ powv  # strictly increasing because perms are lex sorted
    table = np.empty((m, m), dtype=_DTYPE)
    block = max(1, 4_000_000 // (m * deg))
    for lo in range(0, m, block):
        Pi = P[lo : lo + block]
        comp = Pi[:, P]  # comp[x, j, k] = Pi[x][P[j][k]]
        table[lo : lo + block] = np.searchsorted(keys, comp @ powv).astype(_DTYPE)
    names = [_cycle_name(p) for p in perms]
    return FiniteGroup(table, label, element_names=names, unchecked=True)


def _dihedral(n: int) -> FiniteGroup:
    # elements r^k (indices 0..n-1) and r^k s (indices n..2n-1); s r = r^-1 s
    idx = np.arange(2 * n)
    f = idx // n
    k = idx % n
    sign = 1 - 2 * f
    table = ((f[:, None] ^ f[None, :]) * n + (k[:, None] + sign[:, None] * k[None, :]) % n).astype(_DTYPE)
    names = ["e"] + [f"r{i}" for i in range(1, n)] + ["s"] + [f"r{i}s" for i in range(1, n)]
    return FiniteGroup(table, f"D{n}", element_names=names, unchecked=True)


def _quaternion8() -> FiniteGroup:
    # indices: 1, -1, i, -i, j, -j, k, -k
    def unit_mul(u, v):
        if u == 0:
            return 1, v
        if v == 0:
            return 1, u
        if u == v:
            return -1, 0
        if (u, v) in ((1, 2), (2, 3), (3, 1)):
            return 1, 6 - u - v
        return -1, 6 - u - v

    table = np.zeros((8, 8), dtype=_DTYPE)
    for a in range(8):
        for b in range(8):
            ua, sa = a // 2, 1 - 2 * (a % 2)
            ub, sb = b // 2, 1 - 2 * (b % 2)
            s, u = unit_mul(ua, ub)
            s *= sa * sb
            table[a, b] = u * 2 + (0 if s == 1 else 1)
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup(table, "Q8", element_names=names, unchecked=True)


def _klein4() -> FiniteGroup:
    idx = np.arange(4)
    table = ((idx[:, None] ^ idx[None, :])).astype(_DTYPE)
    return FiniteGroup(table, "V4", element_names=["e", "a", "b", "ab"], unchecked=True)


_FAMILIES = ("cyclic", "symmetric", "alternating", "dihedral", "quaternion8", "klein4")
_family_cache: dict[tuple[str, Optional[int]], FiniteGroup] = {}


def make_family(family: str, n: Optional[int] = None, *, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Construct a named family member with a fixed, documented indexing.

    cyclic n: residues 0..n-1 under addition mod n.
    symmetric n / alternating n: permutations of 0..n-1 ordered
        lexicographically by their one-line word; p*q applies q first.
    dihedral n: order 2n; indices 0..n-1 are the rotations r^k and
        n..2n-1 are the reflections r^k s (index n + k).
    quaternion8: elements 1, -1, i, -i, j, -j, k, -k in that order.
    klein4: pairs over Z2 x Z2, the pair (a, b) at index 2a + b.

    Results are cached per (family, n); caps are checked on every call.
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {_FAMILIES}")
    if family in ("quaternion8", "klein4"):
        if n is not None:
            raise ValueError(f"{family} takes no degree")
    else:
        if n is None or n < 1:
            raise ValueError(f"{family} needs a degree n >= 1")
    if family == "cyclic" and n > caps.single:
        raise OrderCapExceeded(f"cyclic order {n} exceeds cap {caps.single}")
    if family == "dihedral" and 2 * n > caps.single:
        raise OrderCapExceeded(f"dihedral order {2 * n} exceeds cap {caps.single}")
    if family == "symmetric" and n > caps.symmetric_n:
        raise OrderCapExceeded(f"symmetric degree {n} exceeds cap {caps.symmetric_n}")
    if family == "alternating" and n > caps.alternating_n:
        raise OrderCapExceeded(f"alternating degree {n} exceeds cap {caps.alternating_n}")

    key = (family, n)
    hit = _family_cache.get(key)
    if hit is not None:
        return hit

    if family == "cyclic":
        g = FiniteGroup(_cyclic_table(n), f"C{n}", element_names=[str(i) for i in range(n)], unchecked=True)
    elif family == "symmetric":
        perms = sorted(permutations(range(n)))
        g = _perm_group(perms, f"S{n}")
    elif family == "alternating":
        perms = [p for p in sorted(permutations(range(n))) if _perm_parity(p) == 0]
        g = _perm_group(perms, f"A{n}")
    elif family == "dihedral":
        g = _dihedral(n)
    elif family == "quaternion8":
        g = _quaternion8()
    else:
        g = _klein4()
    _family_cache[key] = g
    return g


_product_cache: dict[tuple, ProductGroup] = {}


def direct_product(g1: FiniteGroup, g2: FiniteGroup, *, caps: Caps = DEFAULT_CAPS) -> ProductGroup:
    """Componentwise product on pairs encoded as a * g2.order + b."""
    order = g1.order * g2.order
    if order > caps.product:
        raise OrderCapExceeded(f"product order {order} exceeds cap {caps.product}")
    key = (g1._key, g1.label, g2._key, g2.label)
    hit = _product_cache.get(key)
    if hit is not None:
        return hit
    r = g2.order
    table = np.repeat(np.repeat(g1.table, r, axis=0), r, axis=1).astype(_DTYPE) * r
    table += np.tile(g2.table, (g1.order, g1.order))
    names = None
    if g1.element_names is not None and g2.element_names is not None:
        names = [f"({a},{b})" for a in g1.element_names for b in g2.element_names]
    grp = FiniteGroup(
        table,
        f"{g1.label} x {g2.label}",
        element_names=names,
        unchecked=True,
        assoc_limit=caps.single,
    )
    prod = ProductGroup(grp, g1, g2)
    _product_cache[key] = prod
    return prod


def center(g: FiniteGroup) -> ElementSet:
    """Elements commuting with everything; always a normal subgroup."""
    cached = g._cache.get("center")
    if cached is None:
        mask = (g.table == g.table.T).all(axis=1)
        cached = ElementSet(g, np.flatnonzero(mask))
        g._cache["center"] = cached
    return cached


def conjugacy_classes(g: FiniteGroup) -> list[ElementSet]:
    """Partition into conjugacy classes, ordered by smallest member."""
    cached = g._cache.get("classes")
    if cached is None:
        n = g.order
        seen = np.zeros(n, dtype=bool)
        out = []
        for a in range(n):
            if seen[a]:
                continue
            xa = g.table[:, a]
            orbit = np.unique(g.table[xa, g.inverse])  # (x*a)*x^-1 over all x
            seen[orbit] = True
            out.append(ElementSet(g, orbit))
        cached = out
        g._cache["classes"] = cached
    return cached


def commutator(g: FiniteGroup, a: int, b: int) -> int:
    """a*b*a^-1*b^-1."""
    t = g.table
    ab = t[a, b]
    return int(t[t[ab, g.inverse[a]], g.inverse[b]])


def subgroup_as_group(s: ElementSet, label: Optional[str] = None) -> FiniteGroup:
    """Reindex a subgroup as a standalone group (sorted members -> 0..k-1)."""
    require_subgroup(s)
    g = s.parent
    mem = s.index_array()
    sub = g.table[np.ix_(mem, mem)]
    table = np.searchsorted(mem, sub).astype(_DTYPE)
    names = None
    if g.element_names is not None:
        names = [g.element_names[int(m)] for m in mem]
    return FiniteGroup(
        table,
        label if label is not None else f"{g.label}<{len(mem)}>",
        element_names=names,
        unchecked=True,
    )


def write_cayley_file(g: FiniteGroup, path) -> None:
    """Write '# label: NAME', the order, then one table row per line."""
    lines = [f"# label: {g.label}", str(g.order)]
    for a in range(g.order):
        lines.append(" ".join(str(int(v)) for v in g.table[a]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_cayley_file(path, *, label: Optional[str] = None, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Read a table written by write_cayley_file; identity is relabeled to 0."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidCayleyFile(f"cannot read {p}: {exc}") from exc
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    file_label = None
    if lines and lines[0].startswith("#"):
        head = lines.pop(0)[1:].strip()
        if head.lower().startswith("label:"):
            file_label = head[6:].strip()
    if not lines:
        raise InvalidCayleyFile(f"{p}: missing order line")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise InvalidCayleyFile(f"{p}: order line {lines[0]!r} is not an integer") from exc
    if n < 1:
        raise InvalidCayleyFile(f"{p}: order must be >= 1, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise InvalidCayleyFile(f"{p}: expected {n} rows, found {len(rows)}")
    table = []
    for i, row in enumerate(rows):
        try:
            vals = [int(tok) for tok in row.split()]
        except ValueError as exc:
            raise InvalidCayleyFile(f"{p}: row {i} has a non-integer token") from exc
        if len(vals) != n:
            raise InvalidCayleyFile(f"{p}: row {i} has {len(vals)} entries, expected {n}")
        table.append(vals)
    name = label if label is not None else (file_label if file_label else p.stem)
    return from_cayley_table(table, name, caps=caps)
