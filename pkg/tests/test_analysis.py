import pytest

from sources.analysis import (
    Verdict,
    admissible_elements,
    analyze,
    quotient_kernel_check,
    krein_conditions,
    projection_spectra_check,
    degenerate_elements,
    shift_counts,
    uniform_minus_measure,
    violating_character,
)
from sources.catalog import z2_square_amalgam, z2_truncated_amalgam, z4_truncated_product
from sources.characters import separative_quotient
from sources.core import (
    Homomorphism,
    Involution,
    NoZeroElement,
    PreconditionError,
    SemigroupError,
    StarSemigroup,
    make_cyclic,
    make_power_z2,
)
from sources.pdfun import PDTable, dirac, full_measure, moment_function, random_measure


def test_power_z2_report():
    S = make_power_z2(3)
    u = S.index("(1,0,0)")
    report = analyze(S, u, [uniform_minus_measure(S, u)])
    record = report.records[0]
    assert (record.minus_dimension, record.plus_dimension) == (4, 0)
    assert record.negative_squares == 4
    assert record.bound_ok
    assert report.counts.m_count == 8
    assert report.verdict is Verdict.PONTRYAGIN
    assert report.achieved
    assert report.violations() == []


def test_cube_root_element_is_not_a_symmetry():
    Z3 = make_cyclic(3, Involution.NEGATION)
    assert krein_conditions(Z3, 1) == (False, False)
    report = analyze(Z3, 1, [full_measure(Z3)])
    assert report.verdict is Verdict.NOT_A_SYMMETRY
    assert report.violations() == []


@pytest.mark.parametrize("label, counts", [("(1,0)", (6, 3, 6)), ("(0,1)", (4, 2, 4))])
def test_amalgam_counts(label, counts):
    S = z2_square_amalgam()
    assert tuple(shift_counts(S, S.index(label))) == counts


def test_counts_on_z4():
    Z4 = make_cyclic(4)
    counts = shift_counts(Z4, 2)
    assert (counts.m_count, counts.minus_one_count) == (0, 0)
    assert counts.raw_moved_count == 4


def test_raw_moved_exceeds_classes_on_product():
    S = z4_truncated_product(2)
    report = analyze(S, S.index("(2,0)"), [full_measure(S)])
    assert report.counts.raw_moved_count > report.counts.m_count
    assert any("classes" in note for note in report.notes)


def test_shift_counts_precondition():
    Z3 = make_cyclic(3, Involution.NEGATION)
    with pytest.raises(PreconditionError):
        shift_counts(Z3, 1)


def test_zero_element_is_identity_shift():
    S = z2_square_amalgam()
    report = analyze(S, S.zero, [full_measure(S)])
    record = report.records[0]
    assert (record.minus_dimension, record.plus_dimension) == (0, record.rank)
    assert report.verdict is Verdict.PONTRYAGIN


def test_degenerate_element():
    S = z2_square_amalgam()
    u = S.index("1")
    assert u in degenerate_elements(S)
    report = analyze(S, u, [full_measure(S)])
    record = report.records[0]
    assert record.selfadjoint
    assert not record.involutive
    assert record.cube_ok
    assert record.null_dimension > 0
    assert report.verdict is Verdict.NOT_A_SYMMETRY
    assert any("degenerate" in note for note in report.notes)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_inadmissible_u_is_never_a_symmetry(k):
    Z3 = make_cyclic(3, Involution.NEGATION)
    report = analyze(Z3, 1, [dirac(k)])
    assert report.verdict is Verdict.NOT_A_SYMMETRY


def test_lucky_measure_only_adds_a_note():
    # the trivial character cannot see that 2u is not 0
    Z3 = make_cyclic(3, Involution.NEGATION)
    report = analyze(Z3, 1, [dirac(0)])
    assert report.records[0].selfadjoint and report.records[0].involutive
    assert report.verdict is Verdict.NOT_A_SYMMETRY
    assert any("for the given φ only" in note for note in report.notes)
    assert all(v is not Verdict.KREIN_ONLY for v in (analyze(Z3, u, [full_measure(Z3)]).verdict for u in Z3.elements))


def test_admissible_elements():
    S = z2_square_amalgam()
    assert [S.label(u) for u in admissible_elements(S)] == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    assert admissible_elements(make_cyclic(4)) == [0, 1, 2, 3]
    assert admissible_elements(make_cyclic(4, Involution.NEGATION)) == [0, 2]


def test_violating_character():
    Z4 = make_cyclic(4, Involution.NEGATION)
    assert violating_character(Z4, 2) is None
    assert violating_character(Z4, 1) is not None


def test_analyze_needs_zero():
    S = StarSemigroup(["a"], [[0]], [0], None)
    with pytest.raises(NoZeroElement):
        analyze(S, 0, [full_measure(S)])


def test_analyze_raw_table():
    Z2 = make_cyclic(2)
    report = analyze(Z2, 1, [PDTable(Z2, (2, 1))])
    record = report.records[0]
    assert record.provenance == "raw"
    assert record.minus_atoms is None
    assert (record.minus_dimension, record.plus_dimension) == (1, 1)


def test_projection_spectra_on_mod_two_projection():
    Z4, Z2 = make_cyclic(4), make_cyclic(2)
    h = Homomorphism(Z4, Z2, (0, 1, 0, 1), zero_preserving=True)
    phi = moment_function(Z2, full_measure(Z2))
    assert projection_spectra_check(Z4, Z2, h, 2, phi)
    assert projection_spectra_check(Z4, Z2, h, 1, phi)


def test_projection_spectra_identity():
    S = z2_square_amalgam()
    phi = moment_function(S, random_measure(S, 4, 11))
    assert projection_spectra_check(S, S, Homomorphism.identity(S), S.index("(1,0)"), phi)


def test_projection_spectra_rejects_maps_that_are_not_onto():
    Z2 = make_cyclic(2)
    h = Homomorphism(Z2, Z2, (0, 0))
    with pytest.raises(SemigroupError):
        projection_spectra_check(Z2, Z2, h, 1, moment_function(Z2, full_measure(Z2)))


def test_projection_spectra_across_separative_projection():
    S = z2_truncated_amalgam(4)
    q = separative_quotient(S)
    psi = moment_function(q.quotient, full_measure(q.quotient))
    for u in admissible_elements(S):
        assert projection_spectra_check(S, q.quotient, q.projection, u, psi)


def test_quotient_kernels():
    assert quotient_kernel_check(make_cyclic(4), 2)
    S = z2_truncated_amalgam(4)
    assert quotient_kernel_check(S, S.index("S.1"), trials=10, seed=3)
    assert quotient_kernel_check(make_power_z2(2), 1)
    with pytest.raises(PreconditionError):
        quotient_kernel_check(make_cyclic(3, Involution.NEGATION), 1)
