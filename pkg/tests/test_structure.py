import pytest

from sources.catalog import catalog, z2_max_product, z2_square_amalgam
from sources.characters import is_separative
from sources.core import NoZeroElement, PreconditionError, StarSemigroup, make_cyclic, make_max_nat, make_truncated_nat
from sources.structure import (
    archimedean_components,
    check_involutive_component,
    check_fixed_components,
    component_of,
    hasse_edges,
    is_cancellative,
    relation_is_equivalence,
)


def test_amalgam_has_two_components_in_a_chain():
    S = z2_square_amalgam()
    decomposition = archimedean_components(S)
    assert decomposition.labels() == [["(0,0)", "(0,1)", "(1,0)", "(1,1)"], ["0", "1"]]
    assert decomposition.leq(0, 1)
    assert not decomposition.leq(1, 0)
    assert hasse_edges(decomposition) == [(0, 1)]


def test_truncated_nat_components():
    decomposition = archimedean_components(make_truncated_nat(3))
    assert decomposition.components == ((0,), (1, 2, 3))
    assert component_of(decomposition, 2) == 1
    assert is_cancellative(make_truncated_nat(3), decomposition, 0)
    assert not is_cancellative(make_truncated_nat(3), decomposition, 1)


def test_max_nat_is_a_chain_of_singletons():
    decomposition = archimedean_components(make_max_nat(3))
    assert len(decomposition.components) == 4
    assert hasse_edges(decomposition) == [(0, 1), (1, 2), (2, 3)]


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_relation_is_equivalence_on_catalog(entry):
    assert relation_is_equivalence(entry.semigroup)
    archimedean_components(entry.semigroup)


def test_involutive_component():
    assert check_involutive_component(make_cyclic(4), 2)
    S = z2_square_amalgam()
    assert check_involutive_component(S, S.index("(1,0)"))


def test_involutive_component_preconditions():
    with pytest.raises(PreconditionError):
        check_involutive_component(make_truncated_nat(3), 1)
    with pytest.raises(NoZeroElement):
        check_involutive_component(StarSemigroup(["a"], [[0]], [0], None), 0)


def test_fixed_components_on_separative_amalgam():
    S = z2_square_amalgam()
    assert check_fixed_components(S, S.index("(0,1)"))
    assert check_fixed_components(S, S.index("(1,0)"))


@pytest.mark.parametrize("entry", [e for e in catalog() if is_separative(e.semigroup)], ids=lambda e: e.name)
def test_components_of_separative_semigroups_are_cancellative(entry):
    decomposition = archimedean_components(entry.semigroup)
    assert all(is_cancellative(entry.semigroup, decomposition, i) for i in range(len(decomposition.components)))


@pytest.mark.parametrize("T", [1, 2, 3, 4])
def test_involutive_component_of_z2_max_product(T):
    S = z2_max_product(T)
    u = S.index("(1,0)")
    assert check_involutive_component(S, u)
    assert check_fixed_components(S, u)
