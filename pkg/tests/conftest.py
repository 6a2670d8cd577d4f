import pytest

from nsprod import FiniteGroup, make_family

# Small well-known groups, the shared workbench for most tests.
CATALOG_SPEC = (
    [("cyclic", n) for n in range(2, 13)]
    + [("klein4", None), ("quaternion8", None)]
    + [("dihedral", n) for n in (4, 5, 6)]
    + [("symmetric", 3), ("symmetric", 4)]
    + [("alternating", 4), ("alternating", 5)]
)


@pytest.fixture(scope="session")
def catalog() -> list[FiniteGroup]:
    return [make_family(family, n) for family, n in CATALOG_SPEC]


@pytest.fixture(scope="session")
def small_catalog(catalog) -> list[FiniteGroup]:
    """Catalog members small enough for brute-force oracles."""
    return [g for g in catalog if g.order <= 24]


def table_rows(g: FiniteGroup) -> list[list[int]]:
    """Plain-list copy of a group's table for the pure-Python oracles."""
    return g.table.tolist()
