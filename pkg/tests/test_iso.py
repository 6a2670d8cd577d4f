import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import table_rows
from nsprod import (
    CapExceeded,
    Caps,
    Isomorphism,
    derived_subgroup,
    direct_product,
    find_isomorphism,
    generated_subgroup,
    have_common_subgroup,
    make_family,
    minimal_generating_set,
    signature,
)
from oracles import find_isomorphism_by_bijections


def test_signature_components():
    s4 = make_family("symmetric", 4)
    sig = signature(s4)
    assert sig.order == 24
    assert not sig.abelian
    assert sig.center_order == 1
    assert sig.derived_order == 12
    assert sig.class_sizes == (1, 3, 6, 6, 8)
    assert dict(sig.element_order_histogram) == {1: 1, 2: 9, 3: 8, 4: 6}


def test_signature_separates_same_order_groups():
    assert signature(make_family("cyclic", 6)) != signature(make_family("symmetric", 3))
    assert signature(make_family("quaternion8")) != signature(make_family("dihedral", 4))
    c2xc8 = direct_product(make_family("cyclic", 2), make_family("cyclic", 8)).group
    c4xc4 = direct_product(make_family("cyclic", 4), make_family("cyclic", 4)).group
    assert signature(c2xc8) != signature(c4xc4)


def test_derived_subgroup_frozen():
    assert len(derived_subgroup(make_family("symmetric", 4))) == 12
    assert len(derived_subgroup(make_family("alternating", 5))) == 60
    assert derived_subgroup(make_family("cyclic", 12)).members == {0}
    assert derived_subgroup(make_family("quaternion8")).members == {0, 1}


def test_find_isomorphism_known_positive_pairs():
    c6 = make_family("cyclic", 6)
    c2xc3 = direct_product(make_family("cyclic", 2), make_family("cyclic", 3)).group
    assert find_isomorphism(c6, c2xc3) is not None

    assert find_isomorphism(make_family("dihedral", 3), make_family("symmetric", 3)) is not None

    d6 = make_family("dihedral", 6)
    s3xc2 = direct_product(make_family("symmetric", 3), make_family("cyclic", 2)).group
    assert find_isomorphism(d6, s3xc2) is not None


def test_find_isomorphism_known_negative_pairs():
    assert find_isomorphism(make_family("cyclic", 4), make_family("klein4")) is None
    assert find_isomorphism(make_family("quaternion8"), make_family("dihedral", 4)) is None
    assert find_isomorphism(make_family("cyclic", 6), make_family("symmetric", 3)) is None
    assert find_isomorphism(make_family("cyclic", 4), make_family("cyclic", 8)) is None


def test_isomorphism_object_validates():
    c4 = make_family("cyclic", 4)
    good = Isomorphism(c4, c4, (0, 3, 2, 1))  # inversion automorphism
    assert good.apply(1) == 3
    inv = good.inverse()
    assert inv.mapping == (0, 3, 2, 1)
    with pytest.raises(ValueError):
        Isomorphism(c4, c4, (0, 1, 3, 2))  # not a homomorphism
    with pytest.raises(ValueError):
        Isomorphism(c4, c4, (1, 0, 2, 3))  # moves the identity
    with pytest.raises(ValueError):
        Isomorphism(c4, c4, (0, 1, 1, 3))  # not a bijection


def test_found_isomorphism_is_checked_homomorphism():
    g1 = make_family("dihedral", 6)
    g2 = direct_product(make_family("symmetric", 3), make_family("cyclic", 2)).group
    f = find_isomorphism(g1, g2)
    m = np.array(f.mapping)
    assert np.array_equal(m[g1.table], g2.table[np.ix_(m, m)])
    back = f.inverse()
    assert all(back.apply(f.apply(a)) == a for a in g1.elements())


def test_find_isomorphism_agrees_with_bijection_oracle():
    small = [
        make_family("cyclic", 1),
        make_family("cyclic", 2),
        make_family("cyclic", 3),
        make_family("cyclic", 4),
        make_family("klein4"),
        make_family("cyclic", 5),
        make_family("cyclic", 6),
        make_family("symmetric", 3),
    ]
    for g1, g2 in itertools.product(small, repeat=2):
        expect = find_isomorphism_by_bijections(table_rows(g1), table_rows(g2))
        got = find_isomorphism(g1, g2)
        assert (got is not None) == (expect is not None), (g1.label, g2.label)


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_relabelled_copy_is_always_found(rng):
    from nsprod import from_cayley_table

    base = rng.choice(
        [
            make_family("symmetric", 3),
            make_family("dihedral", 4),
            make_family("quaternion8"),
            make_family("cyclic", 9),
            make_family("alternating", 4),
        ]
    )
    n = base.order
    sigma = list(range(1, n))
    rng.shuffle(sigma)
    sigma = [0] + sigma
    shuffled = [[0] * n for _ in range(n)]
    rows = table_rows(base)
    for a in range(n):
        for b in range(n):
            shuffled[sigma[a]][sigma[b]] = sigma[rows[a][b]]
    copy = from_cayley_table(shuffled, label="shuffled")
    assert find_isomorphism(base, copy) is not None


def test_find_isomorphism_cap():
    c12 = make_family("cyclic", 12)
    with pytest.raises(CapExceeded):
        find_isomorphism(c12, c12, caps=Caps(iso=10))


def test_minimal_generating_set_properties():
    for g in (
        make_family("cyclic", 6),
        make_family("klein4"),
        make_family("symmetric", 4),
        make_family("quaternion8"),
    ):
        gens = minimal_generating_set(g)
        assert len(generated_subgroup(g, gens)) == g.order
        for drop in range(len(gens)):
            rest = gens[:drop] + gens[drop + 1 :]
            assert len(generated_subgroup(g, rest)) < g.order
    assert minimal_generating_set(make_family("cyclic", 6)) == (1,)
    assert minimal_generating_set(make_family("cyclic", 1)) == ()


def test_have_common_subgroup_frozen():
    s3 = make_family("symmetric", 3)
    c4 = make_family("cyclic", 4)
    w = have_common_subgroup(s3, c4)
    assert w is not None and w.prime == 2
    assert len(w.subgroup1) == 2 and len(w.subgroup2) == 2
    assert w.subgroup2.members == {0, 2}

    assert have_common_subgroup(c4, make_family("cyclic", 9)) is None
    assert have_common_subgroup(make_family("cyclic", 1), s3) is None

    w2 = have_common_subgroup(make_family("alternating", 5), make_family("cyclic", 2))
    assert w2 is not None and w2.prime == 2


def test_common_subgroup_witness_is_isomorphic_pair():
    d5 = make_family("dihedral", 5)
    c10 = make_family("cyclic", 10)
    w = have_common_subgroup(d5, c10)
    assert w is not None and w.prime == 2
    from nsprod import subgroup_as_group

    s1 = subgroup_as_group(w.subgroup1)
    s2 = subgroup_as_group(w.subgroup2)
    assert find_isomorphism(s1, s2) is not None
