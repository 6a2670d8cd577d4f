"""Command-line driver: group expressions in, human or JSON reports out.

Subcommands: ns-check, classify, normals, factors, leinster-check,
perfect, paper-examples. Every run is deterministic; JSON reports carry
{schema_version, command, inputs, results, timing_ms} and are
byte-identical across runs except for the timing value.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from typing import Callable, Optional

from .errors import (
    CapExceeded,
    InternalInvariantViolation,
    InvalidCayleyFile,
    MismatchedParent,
    NotAGroup,
    NotASubgroup,
    NotNormal,
    OrderCapExceeded,
    ParseError,
    PreconditionViolated,
)
from .expr import evaluate, format_group_expr, parse_group_expr
from .groups import (
    Caps,
    DEFAULT_CAPS,
    ElementSet,
    FiniteGroup,
    center,
    direct_product,
    make_family,
    subgroup_as_group,
)
from .iso import Isomorphism, find_isomorphism, have_common_subgroup
from .lattice import all_normal_subgroups, generated_subgroup, is_normal, project, quotient
from .standardness import (
    NsReport,
    build_nonstandard_witness,
    classify_normal_subgroups,
    find_ns_violation_witness,
    goursat_extract,
    goursat_reconstruct,
    is_leinster_perfect,
    satisfies_ns_direct,
    satisfies_ns_gcd,
    section_quotient,
    sum_of_normal_orders,
)
from .structure import composition_factors, composition_series, leinster_common_member

SCHEMA_VERSION = 1

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "nsprod report",
    "type": "object",
    "required": ["schema_version", "command", "inputs", "results", "timing_ms"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "results": {"type": "object"},
        "timing_ms": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

_BAD_INPUT = (
    ParseError,
    InvalidCayleyFile,
    NotAGroup,
    OrderCapExceeded,
    CapExceeded,
    NotASubgroup,
    NotNormal,
    MismatchedParent,
    PreconditionViolated,
    ValueError,
    OSError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsprod",
        description="Normal subgroups of direct products: classification and product-condition checks.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--cap", type=int, default=None, metavar="N", help="override the order caps")
    common.add_argument(
        "--seedless-deterministic",
        action="store_true",
        help="accepted for compatibility; every run is already deterministic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    two = [("expr1", "first group expression"), ("expr2", "second group expression")]
    one = [("expr", "group expression")]
    for name, args, helptext in (
        ("ns-check", two, "decide the product condition for a pair, both criteria"),
        ("classify", two, "classify every normal subgroup of the direct product"),
        ("normals", one, "list all normal subgroups"),
        ("factors", one, "composition factors with multiplicity"),
        ("leinster-check", two, "find a common composition factor, if any"),
        ("perfect", one, "check whether normal subgroup orders sum to 2|G|"),
        ("paper-examples", [], "run every worked example and the acceptance checks"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        for argname, h in args:
            p.add_argument(argname, help=h)
    return parser


def _caps_for(args) -> Caps:
    if args.cap is None:
        return DEFAULT_CAPS
    if args.cap < 1:
        raise ValueError("--cap must be at least 1")
    return replace(DEFAULT_CAPS, single=args.cap, product=args.cap)


def _set_payload(s: ElementSet) -> dict:
    out: dict = {"order": len(s), "members": list(s.sorted_members())}
    if s.parent.element_names is not None:
        out["names"] = [s.parent.element_names[m] for m in s.sorted_members()]
    return out


def _group_payload(g: FiniteGroup) -> dict:
    return {"label": g.label, "order": g.order}


def _ns_payload(rep: NsReport) -> dict:
    out: dict = {
        "holds": rep.holds,
        "prime_set_1": sorted(rep.prime_set_1),
        "prime_set_2": sorted(rep.prime_set_2),
        "violation": None,
    }
    if rep.violation is not None:
        out["violation"] = {
            "h1": _set_payload(rep.violation.h1),
            "h2": _set_payload(rep.violation.h2),
            "prime": rep.violation.prime,
        }
    if rep.pairs_scanned is not None:
        out["pairs_scanned"] = rep.pairs_scanned
    return out


def _parse_pair(args, caps: Caps):
    e1 = parse_group_expr(args.expr1)
    e2 = parse_group_expr(args.expr2)
    inputs = {"expr1": format_group_expr(e1), "expr2": format_group_expr(e2)}
    return evaluate(e1, caps=caps), evaluate(e2, caps=caps), inputs


def _parse_one(args, caps: Caps):
    e = parse_group_expr(args.expr)
    return evaluate(e, caps=caps), {"expr": format_group_expr(e)}


def _cmd_ns_check(args, caps: Caps):
    g1, g2, inputs = _parse_pair(args, caps)
    rep_gcd = satisfies_ns_gcd(g1, g2)
    rep_direct = satisfies_ns_direct(g1, g2)
    if rep_gcd.holds != rep_direct.holds:
        raise InternalInvariantViolation("the two product-condition criteria disagree")
    witness = None
    if not rep_gcd.holds:
        w = find_ns_violation_witness(g1, g2, caps=caps)
        p = direct_product(g1, g2, caps=caps)
        witness = {
            "order": len(w),
            "members": list(w.sorted_members()),
            "left_projection_order": len(project(p, 1, w)),
            "right_projection_order": len(project(p, 2, w)),
        }
    results = {
        "groups": [_group_payload(g1), _group_payload(g2)],
        "holds": rep_gcd.holds,
        "gcd_criterion": _ns_payload(rep_gcd),
        "direct_criterion": _ns_payload(rep_direct),
        "witness": witness,
    }
    return inputs, results


def _cmd_classify(args, caps: Caps):
    g1, g2, inputs = _parse_pair(args, caps)
    p = direct_product(g1, g2, caps=caps)
    verdicts = classify_normal_subgroups(p, caps=caps)
    rep_gcd = satisfies_ns_gcd(g1, g2)
    rep_direct = satisfies_ns_direct(g1, g2)
    if rep_gcd.holds != rep_direct.holds:
        raise InternalInvariantViolation("the two product-condition criteria disagree")
    common = leinster_common_member(g1, g2)
    payload = []
    for v in verdicts:
        entry: dict = {
            "order": len(v.subgroup),
            "members": list(v.subgroup.sorted_members()),
            "standard": v.standard,
        }
        if v.subgroup.parent.element_names is not None:
            entry["names"] = [v.subgroup.parent.element_names[m] for m in v.subgroup.sorted_members()]
        if v.standard:
            entry["factors"] = {
                "left": _set_payload(v.factors[0]),
                "right": _set_payload(v.factors[1]),
            }
        else:
            entry["goursat"] = {
                "h1": _set_payload(v.goursat.h1),
                "h2": _set_payload(v.goursat.h2),
                "p1": _set_payload(v.goursat.p1),
                "p2": _set_payload(v.goursat.p2),
                "section_order": v.goursat.q1.group.order,
            }
        payload.append(entry)
    all_standard = all(v.standard for v in verdicts)
    results = {
        "product": _group_payload(p.group),
        "left": _group_payload(g1),
        "right": _group_payload(g2),
        "normal_subgroup_count": len(verdicts),
        "all_standard": all_standard,
        "ns_holds": rep_gcd.holds,
        "gcd_criterion": _ns_payload(rep_gcd),
        "direct_criterion": _ns_payload(rep_direct),
        "leinster_common_member": None
        if common is None
        else {"label": common.label.display, "abelian": common.abelian, "order": common.label.order},
        "composition_factors": {
            "left": [list(p_) for p_ in composition_factors(g1).as_pairs()],
            "right": [list(p_) for p_ in composition_factors(g2).as_pairs()],
        },
        "verdicts": payload,
    }
    return inputs, results


def _cmd_normals(args, caps: Caps):
    g, inputs = _parse_one(args, caps)
    subs = all_normal_subgroups(g)
    results = {
        "group": _group_payload(g),
        "count": len(subs),
        "subgroups": [_set_payload(s) for s in subs],
    }
    return inputs, results


def _cmd_factors(args, caps: Caps):
    g, inputs = _parse_one(args, caps)
    series = composition_series(g)
    fm = composition_factors(g)
    results = {
        "group": _group_payload(g),
        "factors": [list(p_) for p_ in fm.as_pairs()],
        "composition_length": fm.total(),
        "chain_orders": [len(s) for s in series.chain],
    }
    return inputs, results


def _cmd_leinster_check(args, caps: Caps):
    g1, g2, inputs = _parse_pair(args, caps)
    common = leinster_common_member(g1, g2)
    results = {
        "groups": [_group_payload(g1), _group_payload(g2)],
        "common_member": None
        if common is None
        else {"label": common.label.display, "abelian": common.abelian, "order": common.label.order},
    }
    return inputs, results


def _cmd_perfect(args, caps: Caps):
    g, inputs = _parse_one(args, caps)
    total = sum_of_normal_orders(g)
    results = {
        "group": _group_payload(g),
        "sum_of_normal_orders": total,
        "perfect": is_leinster_perfect(g),
    }
    return inputs, results


# ---------------------------------------------------------------------------
# paper-examples: worked examples plus the acceptance checks, one line each.


def catalog_groups(caps: Caps = DEFAULT_CAPS) -> list[FiniteGroup]:
    """The fixed catalog used by the equivalence sweep and the oracles."""
    groups = [make_family("cyclic", n, caps=caps) for n in range(2, 13)]
    groups.append(make_family("klein4", caps=caps))
    groups.append(make_family("quaternion8", caps=caps))
    groups.extend(make_family("dihedral", n, caps=caps) for n in (4, 5, 6))
    groups.extend(make_family("symmetric", n, caps=caps) for n in (3, 4))
    groups.extend(make_family("alternating", n, caps=caps) for n in (4, 5))
    return groups


def _py_closure(table: list[list[int]], seed: frozenset[int]) -> frozenset[int]:
    cur = set(seed) | {0}
    queue = list(cur)
    while queue:
        a = queue.pop()
        for b in list(cur):
            for prod in (table[a][b], table[b][a]):
                if prod not in cur:
                    cur.add(prod)
                    queue.append(prod)
    return frozenset(cur)


def _brute_subgroups(g: FiniteGroup) -> set[frozenset[int]]:
    """Every subgroup, by closing each known subgroup with one more element."""
    table = g.table.tolist()
    triv = frozenset([0])
    subs = {triv}
    frontier = [triv]
    while frontier:
        base = frontier.pop()
        for x in range(1, g.order):
            if x in base:
                continue
            grown = _py_closure(table, base | {x})
            if grown not in subs:
                subs.add(grown)
                frontier.append(grown)
    return subs


def _brute_normal_subgroups(g: FiniteGroup) -> set[frozenset[int]]:
    table = g.table.tolist()
    inv = g.inverse.tolist()
    out = set()
    for sub in _brute_subgroups(g):
        if all(table[table[x][a]][inv[x]] in sub for x in range(g.order) for a in sub):
            out.add(sub)
    return out


def _oracle_have_common(g1: FiniteGroup, g2: FiniteGroup, caps: Caps) -> bool:
    subs1 = sorted(_brute_subgroups(g1), key=lambda s: (len(s), sorted(s)))
    subs2 = sorted(_brute_subgroups(g2), key=lambda s: (len(s), sorted(s)))
    by_order: dict[int, list[FiniteGroup]] = {}
    for s in subs2:
        if len(s) > 1:
            by_order.setdefault(len(s), []).append(subgroup_as_group(ElementSet(g2, s)))
    for s in subs1:
        if len(s) == 1 or len(s) not in by_order:
            continue
        left = subgroup_as_group(ElementSet(g1, s))
        for right in by_order[len(s)]:
            if find_isomorphism(left, right, caps=caps) is not None:
                return True
    return False


def _sweep(caps: Caps, memo: dict) -> list[dict]:
    """Classify every catalog pair and decide both criteria; cached in memo."""
    if "sweep" in memo:
        return memo["sweep"]
    groups = catalog_groups(caps)
    rows = []
    for i in range(len(groups)):
        for j in range(i, len(groups)):
            g1, g2 = groups[i], groups[j]
            if g1.order * g2.order > caps.product:
                continue
            p = direct_product(g1, g2, caps=caps)
            rows.append(
                {
                    "g1": g1,
                    "g2": g2,
                    "all_standard": all(v.standard for v in classify_normal_subgroups(p, caps=caps)),
                    "gcd": satisfies_ns_gcd(g1, g2),
                    "direct": satisfies_ns_direct(g1, g2),
                }
            )
    memo["sweep"] = rows
    return rows


def _check_items(caps: Caps) -> list[tuple[str, Callable[[], str]]]:
    memo: dict = {}
    S4 = make_family("symmetric", 4, caps=caps)
    C3 = make_family("cyclic", 3, caps=caps)
    A5 = make_family("alternating", 5, caps=caps)

    def prop_pair_orders() -> str:
        p = direct_product(S4, C3, caps=caps)
        assert p.group.order == 72, p.group.order
        return "S4 x C3 has order 72"

    def a5_square_order() -> str:
        p = direct_product(A5, A5, caps=caps)
        assert p.group.order == 3600, p.group.order
        return "A5 x A5 has order 3600"

    def s4_center_trivial() -> str:
        assert len(center(S4)) == 1
        return "Z(S4) = {e}"

    def v_in_s4() -> str:
        names = S4.element_names
        gens = [names.index("(12)(34)"), names.index("(13)(24)")]
        v = generated_subgroup(S4, gens)
        got = sorted(names[m] for m in v.members)
        assert got == sorted(["e", "(12)(34)", "(13)(24)", "(14)(23)"]), got
        assert is_normal(S4, v)
        memo["V"] = v
        return "V = {e, (12)(34), (13)(24), (14)(23)} is normal in S4"

    def s4_mod_v() -> str:
        v = memo.get("V")
        if v is None:
            v_in_s4()
            v = memo["V"]
        q = quotient(S4, v)
        s3 = make_family("symmetric", 3, caps=caps)
        assert find_isomorphism(q.group, s3, caps=caps) is not None
        assert len(center(q.group)) == 1 and len(center(s3)) == 1
        return "S4/V is isomorphic to S3; both centers trivial"

    def a5_square_normals() -> str:
        start = time.perf_counter()
        p = direct_product(A5, A5, caps=caps)
        verdicts = classify_normal_subgroups(p, caps=caps)
        elapsed = time.perf_counter() - start
        assert len(verdicts) == 4, len(verdicts)
        assert all(v.standard for v in verdicts)
        orders = sorted(len(v.subgroup) for v in verdicts)
        assert orders == [1, 60, 60, 3600], orders
        sides = sorted(
            (len(v.factors[0]), len(v.factors[1])) for v in verdicts
        )
        assert sides == [(1, 1), (1, 60), (60, 1), (60, 60)], sides
        assert elapsed < 60, f"took {elapsed:.1f}s"
        common = leinster_common_member(A5, A5)
        assert common is not None and not common.abelian
        return f"4 normal subgroups, all products of the factors ({elapsed:.1f}s)"

    def a5_diagonal_not_normal() -> str:
        p = direct_product(A5, A5, caps=caps)
        diag = ElementSet(p.group, [p.encode(a, a) for a in A5.elements()])
        assert not is_normal(p.group, diag)
        return "the diagonal copy of A5 is a subgroup but not normal in A5 x A5"

    def trivial_factors_empty() -> str:
        c1 = make_family("cyclic", 1, caps=caps)
        series = composition_series(c1)
        fm = composition_factors(c1)
        assert len(series.chain) == 1 and len(series.factors) == 0
        assert fm.total() == 0
        return "the trivial group has an empty factor multiset"

    def common_s4_c3() -> str:
        common = leinster_common_member(S4, C3)
        assert common is not None and common.abelian and common.label.display == "C3"
        return "S4 and C3 share the abelian factor C3"

    def common_a5_a5() -> str:
        common = leinster_common_member(A5, A5)
        assert common is not None and not common.abelian and common.label.display == "A5"
        return "A5 and A5 share the nonabelian factor A5"

    def ns_s4_c3() -> str:
        rep1 = satisfies_ns_gcd(S4, C3)
        rep2 = satisfies_ns_direct(S4, C3)
        assert rep1.holds and rep2.holds
        assert rep2.pairs_scanned == 8, rep2.pairs_scanned
        return "condition holds under both criteria (8 pairs scanned)"

    def s4_c3_all_standard() -> str:
        p = direct_product(S4, C3, caps=caps)
        verdicts = classify_normal_subgroups(p, caps=caps)
        assert len(verdicts) == 8, len(verdicts)
        assert all(v.standard for v in verdicts)
        return "8 normal subgroups of S4 x C3, all standard"

    def c2_c2_diagonal() -> str:
        c2 = make_family("cyclic", 2, caps=caps)
        p = direct_product(c2, c2, caps=caps)
        verdicts = classify_normal_subgroups(p, caps=caps)
        assert len(verdicts) == 5
        nonstd = [v for v in verdicts if not v.standard]
        assert len(nonstd) == 1
        assert nonstd[0].subgroup.sorted_members() == (0, 3)
        return "C2 x C2 has 5 normal subgroups; the diagonal is the one non-standard"

    def c4_c4_fiber() -> str:
        c4 = make_family("cyclic", 4, caps=caps)
        h = generated_subgroup(c4, [2])
        k = ElementSet(c4, range(4))
        q = section_quotient(c4, h, k)
        f = Isomorphism(q.group, q.group, (0, 1))
        w = build_nonstandard_witness(c4, c4, h, h, k, k, f, caps=caps)
        assert len(w) == 8, len(w)
        return "matching C4/{0,2} across two copies of C4 gives a non-standard subgroup of order 8"

    def s4_s4_witness() -> str:
        w = find_ns_violation_witness(S4, S4, caps=caps)
        assert w is not None and len(w) == 288, None if w is None else len(w)
        p = direct_product(S4, S4, caps=caps)
        assert is_normal(p.group, w)
        assert len(w) != len(project(p, 1, w)) * len(project(p, 2, w))
        return "S4 x S4 yields a non-standard witness of order 288 through H1 = H2 = A4"

    def sweep_theorem() -> str:
        rows = _sweep(caps, memo)
        bad = [r for r in rows if r["all_standard"] != r["gcd"].holds]
        assert not bad, f"{len(bad)} disagreements"
        return f"{len(rows)} catalog pairs: all-standard iff the gcd criterion holds"

    def sweep_criteria_agree() -> str:
        rows = _sweep(caps, memo)
        bad = [r for r in rows if r["gcd"].holds != r["direct"].holds]
        assert not bad, f"{len(bad)} disagreements"
        return f"{len(rows)} catalog pairs: gcd and direct criteria agree"

    def sweep_witnesses() -> str:
        rows = _sweep(caps, memo)
        failing = [r for r in rows if not r["gcd"].holds]
        for r in failing:
            w = find_ns_violation_witness(r["g1"], r["g2"], caps=caps)
            p = direct_product(r["g1"], r["g2"], caps=caps)
            assert w is not None and is_normal(p.group, w)
            assert len(w) != len(project(p, 1, w)) * len(project(p, 2, w))
            data = goursat_extract(p, w)
            assert goursat_reconstruct(p, data) == w
        return f"{len(failing)} failing pairs, each with a verified non-standard witness"

    def jordan_holder() -> str:
        checked = 0
        for g in catalog_groups(caps):
            fm_large = composition_factors(g, policy="largest")
            fm_small = composition_factors(g, policy="smallest")
            assert fm_large == fm_small, g.label
            for k in all_normal_subgroups(g):
                fk = (
                    composition_factors(subgroup_as_group(k))
                    if len(k) > 1
                    else composition_factors(make_family("cyclic", 1, caps=caps))
                )
                fq = composition_factors(quotient(g, k).group)
                assert fm_large == fq.union(fk), (g.label, len(k))
                checked += 1
        return f"{checked} (G, K) pairs satisfy C(G) = C(G/K) + C(K); policies agree"

    def coprime_and_abelian() -> str:
        import math as _math

        groups = catalog_groups(caps)
        coprime = abelian_ns = 0
        for i in range(len(groups)):
            for j in range(i, len(groups)):
                g1, g2 = groups[i], groups[j]
                if _math.gcd(g1.order, g2.order) == 1:
                    assert satisfies_ns_gcd(g1, g2).holds, (g1.label, g2.label)
                    coprime += 1
                if g1.is_abelian and g2.is_abelian and satisfies_ns_gcd(g1, g2).holds:
                    assert _math.gcd(g1.order, g2.order) == 1, (g1.label, g2.label)
                    abelian_ns += 1
        return f"{coprime} coprime pairs hold; {abelian_ns} abelian holding pairs are coprime"

    def triples() -> str:
        c2 = make_family("cyclic", 2, caps=caps)
        c4 = make_family("cyclic", 4, caps=caps)
        c5 = make_family("cyclic", 5, caps=caps)
        inner = direct_product(c2, C3, caps=caps)
        good = direct_product(inner.group, c5, caps=caps)
        assert all(v.standard for v in classify_normal_subgroups(good, caps=caps))
        bad = direct_product(inner.group, c4, caps=caps)
        assert not all(v.standard for v in classify_normal_subgroups(bad, caps=caps))
        return "(C2 x C3) x C5 is all-standard; (C2 x C3) x C4 is not"

    def oracles() -> str:
        small = [g for g in catalog_groups(caps) if g.order <= 24]
        for g in small:
            expect = _brute_normal_subgroups(g)
            got = {frozenset(s.members) for s in all_normal_subgroups(g)}
            assert got == expect, g.label
        pairs = 0
        for i in range(len(small)):
            for j in range(i, len(small)):
                g1, g2 = small[i], small[j]
                fast = have_common_subgroup(g1, g2) is not None
                assert fast == _oracle_have_common(g1, g2, caps), (g1.label, g2.label)
                pairs += 1
        return f"{len(small)} groups and {pairs} pairs agree with the brute-force oracles"

    def leinster_perfect() -> str:
        perfect = [
            n
            for n in range(1, 31)
            if is_leinster_perfect(make_family("cyclic", n, caps=caps))
        ]
        assert perfect == [6, 28], perfect
        return "among C1..C30 exactly C6 and C28 are perfect"

    return [
        ("s4_c3_product_order", prop_pair_orders),
        ("a5_square_order", a5_square_order),
        ("s4_center_trivial", s4_center_trivial),
        ("klein_four_inside_s4", v_in_s4),
        ("s4_mod_v_is_s3", s4_mod_v),
        ("trivial_group_empty_factors", trivial_factors_empty),
        ("common_factor_s4_c3", common_s4_c3),
        ("common_factor_a5_a5", common_a5_a5),
        ("ns_condition_s4_c3", ns_s4_c3),
        ("s4_c3_all_standard", s4_c3_all_standard),
        ("a5_square_all_standard", a5_square_normals),
        ("a5_diagonal_not_normal", a5_diagonal_not_normal),
        ("c2_c2_diagonal_nonstandard", c2_c2_diagonal),
        ("c4_c4_fiber_product", c4_c4_fiber),
        ("s4_s4_witness_order_288", s4_s4_witness),
        ("sweep_standard_iff_gcd", sweep_theorem),
        ("sweep_criteria_agree", sweep_criteria_agree),
        ("sweep_failing_pairs_witnessed", sweep_witnesses),
        ("jordan_holder_disjoint_union", jordan_holder),
        ("coprime_holds_abelian_converse", coprime_and_abelian),
        ("nested_triple_products", triples),
        ("brute_force_oracles", oracles),
        ("leinster_perfect_c6_c28", leinster_perfect),
    ]


def _cmd_paper_examples(args, caps: Caps):
    items = []
    for name, fn in _check_items(caps):
        try:
            detail = fn()
            items.append({"name": name, "passed": True, "detail": detail})
        except Exception as exc:  # report every failure rather than aborting
            items.append({"name": name, "passed": False, "detail": f"{type(exc).__name__}: {exc}"})
    passed = sum(1 for it in items if it["passed"])
    results = {
        "checks": items,
        "passed": passed,
        "failed": len(items) - passed,
        "all_passed": passed == len(items),
    }
    return {}, results


_COMMANDS = {
    "ns-check": _cmd_ns_check,
    "classify": _cmd_classify,
    "normals": _cmd_normals,
    "factors": _cmd_factors,
    "leinster-check": _cmd_leinster_check,
    "perfect": _cmd_perfect,
    "paper-examples": _cmd_paper_examples,
}


def _describe_set(payload: dict) -> str:
    body = "{" + ", ".join(map(str, payload["members"])) + "}"
    if "names" in payload:
        body += " = {" + ", ".join(payload["names"]) + "}"
    return body


def _render_human(report: dict, out) -> None:
    cmd = report["command"]
    res = report["results"]
    w = out.write
    if cmd == "ns-check":
        w(f"groups: {res['groups'][0]['label']} (order {res['groups'][0]['order']}), ")
        w(f"{res['groups'][1]['label']} (order {res['groups'][1]['order']})\n")
        for key in ("gcd_criterion", "direct_criterion"):
            rep = res[key]
            w(f"{key.replace('_', ' ')}: {'holds' if rep['holds'] else 'fails'}")
            w(f" (primes {rep['prime_set_1']} vs {rep['prime_set_2']})")
            if rep.get("pairs_scanned") is not None:
                unit = "pair" if rep["pairs_scanned"] == 1 else "pairs"
                w(f", {rep['pairs_scanned']} {unit} scanned")
            w("\n")
            if rep["violation"] is not None:
                v = rep["violation"]
                w(
                    f"  violating pair: |H1| = {v['h1']['order']}, |H2| = {v['h2']['order']},"
                    f" shared prime {v['prime']}\n"
                )
        if res["witness"] is not None:
            wt = res["witness"]
            w(
                f"non-standard witness: order {wt['order']}, projections"
                f" {wt['left_projection_order']} x {wt['right_projection_order']}\n"
            )
        w(f"result: the product condition {'holds' if res['holds'] else 'fails'}\n")
    elif cmd == "classify":
        w(
            f"product {res['product']['label']} of order {res['product']['order']}:"
            f" {res['normal_subgroup_count']} normal subgroups\n"
        )
        for v in res["verdicts"]:
            kind = "standard" if v["standard"] else "NON-STANDARD"
            line = f"  order {v['order']:>5}: {kind}"
            if v["standard"]:
                f_ = v["factors"]
                line += f" = (order {f_['left']['order']}) x (order {f_['right']['order']})"
            else:
                g_ = v["goursat"]
                line += (
                    f", slices {g_['h1']['order']} and {g_['h2']['order']},"
                    f" section of order {g_['section_order']}"
                )
            w(line + "\n")
        w(f"all standard: {'yes' if res['all_standard'] else 'no'}")
        w(f"; condition {'holds' if res['ns_holds'] else 'fails'}\n")
    elif cmd == "normals":
        w(f"{res['group']['label']} (order {res['group']['order']}): {res['count']} normal subgroups\n")
        for s in res["subgroups"]:
            w(f"  order {s['order']:>4}: {_describe_set(s)}\n")
    elif cmd == "factors":
        w(f"{res['group']['label']} (order {res['group']['order']}):\n")
        pretty = ", ".join(f"{name}^{m}" if m > 1 else name for name, m in res["factors"])
        w(f"  composition factors: {{{pretty or ''}}}\n")
        w(f"  chain orders: {res['chain_orders']}\n")
    elif cmd == "leinster-check":
        cm = res["common_member"]
        if cm is None:
            w("no common composition factor\n")
        else:
            kind = "abelian" if cm["abelian"] else "nonabelian"
            w(f"common composition factor: {cm['label']} ({kind}, order {cm['order']})\n")
    elif cmd == "perfect":
        w(
            f"{res['group']['label']}: normal subgroup orders sum to {res['sum_of_normal_orders']}"
            f" (group order {res['group']['order']}): {'perfect' if res['perfect'] else 'not perfect'}\n"
        )
    elif cmd == "paper-examples":
        for item in res["checks"]:
            w(f"{'PASS' if item['passed'] else 'FAIL'} {item['name']}: {item['detail']}\n")
        w(f"{res['passed']} passed, {res['failed']} failed\n")


def run_command(argv, stream=None) -> tuple[int, Optional[dict]]:
    """Run one CLI invocation; returns (exit code, report dict or None)."""
    out = stream if stream is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code in (0, None) else 2, None)
    start = time.perf_counter()
    try:
        caps = _caps_for(args)
        inputs, results = _COMMANDS[args.command](args, caps)
    except InternalInvariantViolation as exc:
        out.write(f"internal invariant violation: {exc}\n")
        return 1, None
    except _BAD_INPUT as exc:
        out.write(f"error: {exc}\n")
        return 2, None
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "inputs": inputs,
        "results": results,
        "timing_ms": int((time.perf_counter() - start) * 1000),
    }
    if args.json:
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        _render_human(report, out)
    code = 0
    if args.command == "paper-examples" and not results["all_passed"]:
        code = 1
    return code, report


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)[0]


if __name__ == "__main__":
    sys.exit(main())
