import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsprod import (
    OrderCapExceeded,
    ParseError,
    evaluate,
    find_isomorphism,
    format_group_expr,
    make_family,
    parse_group_expr,
    write_cayley_file,
)
from nsprod.expr import FamilyAtom, FileAtom, Product


def test_parse_atoms():
    assert parse_group_expr("C(6)") == FamilyAtom("cyclic", 6)
    assert parse_group_expr("Q8") == FamilyAtom("quaternion8", None)
    assert parse_group_expr("v4") == FamilyAtom("klein4", None)
    assert parse_group_expr("  D(7) ") == FamilyAtom("dihedral", 7)
    assert parse_group_expr('file "x.cayley"') == FileAtom("x.cayley")


def test_parse_is_case_insensitive():
    assert parse_group_expr("s(4) X c(3)") == parse_group_expr("S(4) x C(3)")


def test_product_associates_left():
    got = parse_group_expr("C(2) x C(3) x C(5)")
    assert got == Product(Product(FamilyAtom("cyclic", 2), FamilyAtom("cyclic", 3)), FamilyAtom("cyclic", 5))


def test_parens_override_association():
    got = parse_group_expr("C(2) x (C(3) x C(5))")
    assert got == Product(FamilyAtom("cyclic", 2), Product(FamilyAtom("cyclic", 3), FamilyAtom("cyclic", 5)))
    assert parse_group_expr("(Q8)") == FamilyAtom("quaternion8", None)


@pytest.mark.parametrize(
    "text, position, expected_hint",
    [
        ("", 0, "C(n)"),
        ("S(4", 3, ")"),
        ("x C(2)", 0, "C(n)"),
        ("C(0)", 2, "integer >= 1"),
        ("D(2)", 2, "integer >= 3"),
        ("S(1)", 2, "integer >= 2"),
        ("foo", 0, "C(n)"),
        ("C(2))", 4, "x"),
        ("C(2) C(3)", 5, "x"),
        ("file", 4, '"'),
        ("S()", 2, "integer"),
        ("C(-3)", 2, "integer"),
    ],
)
def test_parse_errors_carry_position_and_expectations(text, position, expected_hint):
    with pytest.raises(ParseError) as exc:
        parse_group_expr(text)
    assert exc.value.position == position
    assert expected_hint in exc.value.expected


def test_ast_constructors_enforce_bounds():
    with pytest.raises(ValueError):
        FamilyAtom("cyclic", 0)
    with pytest.raises(ValueError):
        FamilyAtom("alternating", 1)
    with pytest.raises(ValueError):
        FamilyAtom("quaternion8", 8)
    with pytest.raises(ValueError):
        FamilyAtom("nosuch", 3)


_atoms = st.one_of(
    st.integers(1, 30).map(lambda n: FamilyAtom("cyclic", n)),
    st.integers(2, 7).map(lambda n: FamilyAtom("symmetric", n)),
    st.integers(2, 7).map(lambda n: FamilyAtom("alternating", n)),
    st.integers(3, 15).map(lambda n: FamilyAtom("dihedral", n)),
    st.just(FamilyAtom("quaternion8", None)),
    st.just(FamilyAtom("klein4", None)),
    st.text(
        st.characters(min_codepoint=32, max_codepoint=126, exclude_characters='"'),
        min_size=1,
        max_size=12,
    ).map(FileAtom),
)
_exprs = st.recursive(_atoms, lambda kids: st.builds(Product, kids, kids), max_leaves=8)


@settings(max_examples=200, deadline=None)
@given(_exprs)
def test_format_parse_roundtrip(ast):
    assert parse_group_expr(format_group_expr(ast)) == ast


def test_evaluate_families_and_products():
    assert evaluate(parse_group_expr("C(1)")).order == 1
    g = evaluate(parse_group_expr("S(4) x C(3)"))
    assert g.order == 72
    nested = evaluate(parse_group_expr("(C(2) x C(3)) x C(4)"))
    assert nested.order == 24
    assert evaluate(parse_group_expr("D(3)")).order == 6


def test_evaluate_file_atom(tmp_path):
    path = tmp_path / "k4.cayley"
    write_cayley_file(make_family("klein4"), path)
    g = evaluate(parse_group_expr(f'file "{path}"'))
    assert g.order == 4
    assert find_isomorphism(g, make_family("klein4")) is not None


def test_evaluate_file_atom_relative_to_base_dir(tmp_path):
    write_cayley_file(make_family("cyclic", 5), tmp_path / "c5.cayley")
    g = evaluate(parse_group_expr('file "c5.cayley"'), base_dir=tmp_path)
    assert g.order == 5


def test_evaluate_respects_caps():
    with pytest.raises(OrderCapExceeded):
        evaluate(parse_group_expr("C(600)"))
    with pytest.raises(OrderCapExceeded):
        evaluate(parse_group_expr("C(100) x C(50)"))
