import numpy as np
import pytest

from sources.catalog import catalog, z2_square_amalgam
from sources.characters import enumerate_characters
from sources.core import Involution, make_cyclic, make_power_z2
from sources.pdfun import PDTable, dirac, full_measure, minus_measure, moment_function, random_measure, uniform_measure
from sources.rkhs import (
    NotPositiveDefinite,
    adjoint_check,
    build_gram,
    character_rank,
    dual_realization,
    inertia,
    involution_check,
    kernel_dimension,
    negative_squares,
    power_check,
    reproducing_check,
    selfadjoint_check,
    shift_operator,
    spectrum,
)


def test_inertia_counts_signs():
    assert inertia(np.diag([-2.0, 0.0, 1.0, 3.0])) == (1, 1, 2)
    assert inertia(np.zeros((0, 0))) == (0, 0, 0)


def test_gram_realization_reproduces_the_kernel():
    S = make_power_z2(3)
    realization = build_gram(S, moment_function(S, random_measure(S, 5, 3)))
    assert realization.rank == 5
    assert reproducing_check(realization)


def test_rank_equals_support_size():
    S = z2_square_amalgam()
    count = len(enumerate_characters(S))
    assert build_gram(S, moment_function(S, full_measure(S))).rank == count
    assert character_rank(S) == count
    assert character_rank(S, [0, 2]) == 2


def test_non_positive_definite_table():
    Z2 = make_cyclic(2)
    with pytest.raises(NotPositiveDefinite) as info:
        build_gram(Z2, PDTable(Z2, (1, 2)))
    assert info.value.eigenvalue == pytest.approx(-1)


def test_shift_by_zero_is_identity():
    S = make_power_z2(2)
    realization = build_gram(S, moment_function(S, full_measure(S)))
    matrix = shift_operator(realization, S.zero).matrix
    assert np.allclose(matrix, np.eye(realization.rank))


def test_example_z2_cubed_dims():
    S = make_power_z2(3)
    u = S.index("(1,0,0)")
    realization = build_gram(S, moment_function(S, minus_measure(S, u)))
    matrix = shift_operator(realization, u).matrix
    assert selfadjoint_check(matrix)
    assert involution_check(matrix)
    assert kernel_dimension(matrix, -1) == 4
    assert kernel_dimension(matrix, 1) == 0
    assert negative_squares(S, moment_function(S, minus_measure(S, u)), u) == 4


def test_cube_root_shift_is_not_an_involution():
    Z3 = make_cyclic(3, Involution.NEGATION)
    realization = build_gram(Z3, moment_function(Z3, full_measure(Z3)))
    matrix = shift_operator(realization, 1).matrix
    assert not selfadjoint_check(matrix)
    assert not involution_check(matrix)
    assert power_check(matrix, 4)
    assert adjoint_check(realization, 1)
    assert np.allclose(matrix @ matrix.conj().T, np.eye(3))


def test_empty_measure_gives_zero_space():
    S = make_power_z2(2)
    realization = build_gram(S, moment_function(S, uniform_measure([])))
    assert realization.rank == 0
    assert shift_operator(realization, 1).matrix.shape == (0, 0)
    assert dual_realization(S, uniform_measure([]), 1).dimension == 0


def test_dual_realization_agrees_with_gram():
    S = z2_square_amalgam()
    u = S.index("(1,0)")
    measure = full_measure(S)
    dual = dual_realization(S, measure, u)
    matrix = shift_operator(build_gram(S, moment_function(S, measure)), u).matrix
    assert (dual.dimension, dual.minus_dimension, dual.plus_dimension) == (
        6, kernel_dimension(matrix, -1), kernel_dimension(matrix, 1))
    assert dual.minus_dimension == 3


def test_dirac_shift_is_the_character_value():
    Z4 = make_cyclic(4, Involution.NEGATION)
    characters = enumerate_characters(Z4)
    for k, character in enumerate(characters):
        matrix = shift_operator(build_gram(Z4, moment_function(Z4, dirac(k))), 1).matrix
        assert matrix.shape == (1, 1)
        assert matrix[0, 0] == pytest.approx(character(1).to_complex())


def test_spectrum_sorted():
    assert list(spectrum(np.diag([1.0, -1.0, 1.0]))) == [-1.0, 1.0, 1.0]


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_rank_equals_support_size_on_catalog(entry):
    S = entry.semigroup
    count = len(enumerate_characters(S))
    rng = np.random.default_rng(11)
    for k in sorted({1, (count + 1) // 2, count}):
        measure = random_measure(S, k, rng)
        assert build_gram(S, moment_function(S, measure)).rank == len(measure.support)
        assert character_rank(S, measure.support) == k
    assert character_rank(S) == count
