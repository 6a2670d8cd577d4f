"""Acceptance gate: one test per advertised guarantee, frozen expectations.

Each test ends with a single printed PASS line so a verbose run reads as a
checklist. The sweep fixtures are shared; the whole file stays well under
the five-minute budget on a laptop.
"""

import itertools
import math
import time

import pytest

from conftest import table_rows
from nsprod import (
    ElementSet,
    all_normal_subgroups,
    center,
    classify_normal_subgroups,
    composition_factors,
    direct_product,
    find_isomorphism,
    find_ns_violation_witness,
    generated_subgroup,
    goursat_extract,
    goursat_reconstruct,
    have_common_subgroup,
    is_leinster_perfect,
    is_normal,
    leinster_common_member,
    make_family,
    multiset_disjoint_union,
    pairwise_ns,
    project,
    quotient,
    satisfies_ns_direct,
    satisfies_ns_gcd,
    subgroup_as_group,
    sum_of_normal_orders,
)
from oracles import all_subgroups_py, normal_subgroups_py


def _catalog():
    groups = [make_family("cyclic", n) for n in range(2, 13)]
    groups += [make_family("klein4"), make_family("quaternion8")]
    groups += [make_family("dihedral", n) for n in (4, 5, 6)]
    groups += [make_family("symmetric", 3), make_family("symmetric", 4)]
    groups += [make_family("alternating", 4), make_family("alternating", 5)]
    return groups


@pytest.fixture(scope="module")
def sweep():
    """Per unordered catalog pair: classification verdict and both criteria."""
    groups = _catalog()
    rows = {}
    for i, j in itertools.combinations_with_replacement(range(len(groups)), 2):
        g1, g2 = groups[i], groups[j]
        if g1.order * g2.order > 4096:
            continue
        p = direct_product(g1, g2)
        verdicts = classify_normal_subgroups(p)
        rows[(i, j)] = (
            g1,
            g2,
            all(v.standard for v in verdicts),
            satisfies_ns_gcd(g1, g2),
            satisfies_ns_direct(g1, g2),
        )
    return rows


def test_criterion_01_s4_c3_shares_a_factor_yet_all_standard():
    s4 = make_family("symmetric", 4)
    c3 = make_family("cyclic", 3)

    hit = leinster_common_member(s4, c3)
    assert hit is not None and hit.abelian and hit.label.display == "C3"

    assert satisfies_ns_gcd(s4, c3).holds
    assert satisfies_ns_direct(s4, c3).holds

    verdicts = classify_normal_subgroups(direct_product(s4, c3))
    assert len(verdicts) == 8
    assert all(v.standard for v in verdicts)
    print("criterion 1 PASS: S4 x C3 shares factor C3, condition holds, 8/8 standard")


def test_criterion_02_a5_square_under_sixty_seconds():
    a5 = make_family("alternating", 5)
    start = time.perf_counter()
    p = direct_product(a5, a5)
    verdicts = classify_normal_subgroups(p)
    elapsed = time.perf_counter() - start

    assert len(verdicts) == 4
    assert all(v.standard for v in verdicts)
    sides = sorted(
        (len(project(p, 1, v.subgroup)), len(project(p, 2, v.subgroup))) for v in verdicts
    )
    assert sides == [(1, 1), (1, 60), (60, 1), (60, 60)]

    shared = composition_factors(a5).common(composition_factors(a5))
    assert shared, "C(A5) meets C(A5)"

    assert elapsed < 60.0, f"took {elapsed:.1f}s"
    print(f"criterion 2 PASS: A5 x A5 has exactly 4 normal subgroups, all standard, {elapsed:.2f}s")


def test_criterion_03_s4_mod_klein_four_is_s3():
    s4 = make_family("symmetric", 4)
    v = generated_subgroup(s4, [7, 16])
    assert v.members == {0, 7, 16, 23}
    q = quotient(s4, v).group
    s3 = make_family("symmetric", 3)
    assert find_isomorphism(q, s3) is not None
    assert len(center(q)) == 1 and len(center(s3)) == 1
    print("criterion 3 PASS: S4/V is isomorphic to S3, both centerless")


def test_criterion_04_all_standard_iff_gcd_criterion(sweep):
    disagreements = [
        (g1.label, g2.label)
        for g1, g2, all_std, gcd_rep, _ in sweep.values()
        if all_std != gcd_rep.holds
    ]
    assert disagreements == []
    holding = sum(1 for *_, gcd_rep, _ in sweep.values() if gcd_rep.holds)
    print(
        f"criterion 4 PASS: all-standard iff gcd criterion on {len(sweep)} pairs "
        f"({holding} hold, {len(sweep) - holding} fail)"
    )


def test_criterion_05_both_criteria_agree(sweep):
    for g1, g2, _, gcd_rep, direct_rep in sweep.values():
        assert gcd_rep.holds == direct_rep.holds, (g1.label, g2.label)
        assert gcd_rep.prime_set_1 == direct_rep.prime_set_1
        assert gcd_rep.prime_set_2 == direct_rep.prime_set_2
    print(f"criterion 5 PASS: gcd and direct criteria agree on all {len(sweep)} pairs")


def test_criterion_06_every_failing_pair_has_a_constructed_witness(sweep):
    failing = [(g1, g2) for g1, g2, _, gcd_rep, _ in sweep.values() if not gcd_rep.holds]
    assert failing, "the catalog contains failing pairs"
    for g1, g2 in failing:
        w = find_ns_violation_witness(g1, g2)
        assert w is not None, (g1.label, g2.label)
        p = direct_product(g1, g2)
        assert is_normal(p.group, w)
        assert len(project(p, 1, w)) * len(project(p, 2, w)) != len(w)
        data = goursat_extract(p, w)
        assert goursat_reconstruct(p, data).members == w.members
    print(f"criterion 6 PASS: non-standard witnesses built and verified for {len(failing)} failing pairs")


def test_criterion_07_factors_survive_quotients_and_policies():
    checked = 0
    for g in _catalog():
        both = composition_factors(g, policy="largest")
        assert both == composition_factors(g, policy="smallest")
        for k in all_normal_subgroups(g):
            sub = subgroup_as_group(k)
            quo = quotient(g, k).group
            rebuilt = multiset_disjoint_union(composition_factors(quo), composition_factors(sub))
            assert rebuilt == both, (g.label, len(k))
            checked += 1
    print(f"criterion 7 PASS: C(G) = C(G/K) + C(K) for {checked} (G, K) pairs, policies agree")


def test_criterion_08_coprime_pairs_and_the_abelian_converse():
    groups = _catalog()
    coprime_hold = abelian_pairs = 0
    for g1, g2 in itertools.combinations_with_replacement(groups, 2):
        if math.gcd(g1.order, g2.order) == 1:
            assert satisfies_ns_gcd(g1, g2).holds, (g1.label, g2.label)
            coprime_hold += 1
        if g1.is_abelian and g2.is_abelian and satisfies_ns_gcd(g1, g2).holds:
            assert math.gcd(g1.order, g2.order) == 1, (g1.label, g2.label)
            abelian_pairs += 1
    assert coprime_hold and abelian_pairs
    print(
        f"criterion 8 PASS: {coprime_hold} coprime pairs hold; "
        f"{abelian_pairs} abelian holding pairs are coprime"
    )


def test_criterion_09_triple_products():
    c2, c3, c4, c5 = (make_family("cyclic", n) for n in (2, 3, 4, 5))

    assert pairwise_ns([c2, c3, c5]).holds
    inner = direct_product(c2, c3)
    good = direct_product(inner.group, c5)
    assert all(v.standard for v in classify_normal_subgroups(good))

    bad_report = pairwise_ns([c2, c3, c4])
    assert not bad_report.holds and bad_report.failing_pair == (1, 3)
    bad = direct_product(inner.group, c4)
    verdicts = classify_normal_subgroups(bad)
    assert not all(v.standard for v in verdicts)
    print("criterion 9 PASS: (C2 x C3) x C5 all standard; (C2 x C3) x C4 is not")


def test_criterion_10_brute_force_oracles():
    groups = [g for g in _catalog() if g.order <= 24]

    for g in groups:
        got = {s.members for s in all_normal_subgroups(g)}
        assert got == normal_subgroups_py(table_rows(g)), g.label

    # exhaustive common-subgroup oracle: materialize every subgroup once,
    # then look for any nontrivial isomorphic pair
    materialized = {
        g.label: [
            subgroup_as_group(ElementSet(g, s))
            for s in sorted(all_subgroups_py(table_rows(g)), key=len)
            if len(s) > 1
        ]
        for g in groups
    }
    pairs = 0
    for g1, g2 in itertools.combinations_with_replacement(groups, 2):
        found = any(
            s1.order == s2.order and find_isomorphism(s1, s2) is not None
            for s1 in materialized[g1.label]
            for s2 in materialized[g2.label]
        )
        assert found == (have_common_subgroup(g1, g2) is not None), (g1.label, g2.label)
        pairs += 1
    print(
        f"criterion 10 PASS: {len(groups)} groups match the subgroup oracle, "
        f"{pairs} pairs match the common-subgroup oracle"
    )


def test_criterion_11_leinster_perfect_cyclics():
    perfect = []
    for n in range(1, 31):
        if is_leinster_perfect(make_family("cyclic", n)):
            perfect.append(n)
    assert perfect == [6, 28]
    # the sums really are divisor sums computed from the lattice
    assert sum_of_normal_orders(make_family("cyclic", 6)) == 12
    assert sum_of_normal_orders(make_family("cyclic", 28)) == 56
    print("criterion 11 PASS: among C1..C30 exactly C6 and C28 are Leinster-perfect")
