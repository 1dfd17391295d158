"""
Verification of the symmetry criteria for shift operators.

For an element u of a *-semigroup with zero, u_φ is a fundamental symmetry
for every φ iff [2u] = 0 and [u] = [u*] in S/∼; on a finite semigroup the
Pontryagin finiteness condition then holds automatically and the kernel of
u_φ + I is bounded by half the number of classes moved by [u].
"""
from dataclasses import dataclass, field
from enum import Enum
from hashlib import sha256
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .characters import (
    MINUS_ONE,
    character_digest,
    enumerate_characters,
    quotient_conditions,
    separative_quotient,
)
from .core import ElementId, NoZeroElement, PreconditionError, SemigroupError, StarSemigroup
from .manager_debug import DebugManager as DBM
from .pdfun import (
    DEFAULT_TOLERANCE,
    DualMeasure,
    PDTable,
    hermitian_defect,
    minus_measure,
    moment_function,
    random_measure,
)
from .rkhs import (
    adjoint_check,
    build_gram,
    dual_realization,
    involution_check,
    kernel_dimension,
    negative_squares,
    power_check,
    selfadjoint_check,
    shift_operator,
    spectrum,
)


class Verdict(Enum):
    PONTRYAGIN = "PontryaginFundamentalSymmetry"
    # Krein but not Pontryagin needs an infinite S, so finite instances never get it
    KREIN_ONLY = "KreinOnly"
    NOT_A_SYMMETRY = "NotASymmetry"


class ShiftCounts(NamedTuple):
    m_count: int
    minus_one_count: int
    raw_moved_count: int


@dataclass
class MeasureRecord:
    """Results for one φ"""

    provenance: str
    atoms: Tuple[Tuple[int, float], ...]
    rank: int
    residual: float
    selfadjoint: bool
    involutive: bool
    adjoint_ok: bool
    minus_dimension: int
    plus_dimension: int
    null_dimension: int
    negative_squares: Optional[int]
    bound_ok: Optional[bool]
    minus_atoms: Optional[int] = None
    dual_dimension: Optional[int] = None
    dual_minus: Optional[int] = None
    dual_plus: Optional[int] = None
    cube_ok: Optional[bool] = None

    @property
    def cross_engine_ok(self) -> Optional[bool]:
        if self.dual_dimension is None:
            return None
        return (self.rank, self.minus_dimension, self.plus_dimension) == (
            self.dual_dimension, self.dual_minus, self.dual_plus)


@dataclass
class SymmetryReport:
    instance: str
    instance_hash: str
    u_label: str
    u: ElementId
    quotient_conditions: Tuple[bool, bool]
    counts: ShiftCounts
    character_digest: str
    records: List[MeasureRecord] = field(default_factory=list)
    verdict: Verdict = Verdict.NOT_A_SYMMETRY
    notes: List[str] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return all(self.quotient_conditions)

    @property
    def bound(self) -> float:
        return self.counts.m_count / 2

    @property
    def achieved(self) -> bool:
        """Some φ reaches the largest possible kernel of u_φ + I"""
        return any(r.minus_dimension == self.counts.minus_one_count for r in self.records)

    def violations(self) -> List[str]:
        """Identities that must hold for this report and do not"""
        found = []
        for k, record in enumerate(self.records):
            tag = f"φ#{k}"
            if record.cross_engine_ok is False:
                found.append(f"{tag}: Gram and dual realizations disagree")
            if not record.adjoint_ok:
                found.append(f"{tag}: shift by u* is not the adjoint")
            if not self.admissible:
                continue
            if not (record.selfadjoint and record.involutive):
                found.append(f"{tag}: u_φ is not a selfadjoint involution")
            if record.negative_squares != record.minus_dimension:
                found.append(f"{tag}: negative squares {record.negative_squares} != dim ker(u_φ+I) "
                             f"{record.minus_dimension}")
            if not record.bound_ok:
                found.append(f"{tag}: dim ker(u_φ+I) = {record.minus_dimension} exceeds M/2 = {self.bound}")
            if record.minus_dimension + record.plus_dimension != record.rank:
                found.append(f"{tag}: eigenspaces do not fill the space")
            if record.minus_atoms is not None and record.minus_atoms != record.minus_dimension:
                found.append(f"{tag}: {record.minus_atoms} atoms with σ(u) = -1 but kernel dimension "
                             f"{record.minus_dimension}")
        return found


def krein_conditions(semigroup: StarSemigroup, u: ElementId) -> Tuple[bool, bool]:
    """
    ([2u] = 0, [u] = [u*]) in the separative quotient.

    :raises NoZeroElement: If S has no zero.
    """
    if semigroup.zero is None:
        raise NoZeroElement("Krein conditions need a zero element")
    return quotient_conditions(separative_quotient(semigroup), u)


def _counts(semigroup: StarSemigroup, u: ElementId) -> ShiftCounts:
    q = separative_quotient(semigroup)
    target = q.class_of(u)
    moved = sum(1 for c in q.quotient.elements if q.quotient.add(c, target) != c)
    minus = sum(1 for c in enumerate_characters(semigroup) if c(u) == MINUS_ONE)
    raw = sum(1 for s in semigroup.elements if semigroup.add(u, s) != s)
    return ShiftCounts(moved, minus, raw)


def shift_counts(semigroup: StarSemigroup, u: ElementId) -> ShiftCounts:
    """
    Classes moved by [u], characters with σ(u) = -1 and raw elements moved by u.

    :raises PreconditionError: If u fails the Krein conditions.
    """
    if not all(krein_conditions(semigroup, u)):
        raise PreconditionError(f"{semigroup.label(u)} does not satisfy [2u] = 0 and [u] = [u*]")
    return _counts(semigroup, u)


def admissible_elements(semigroup: StarSemigroup) -> List[ElementId]:
    return [u for u in semigroup.elements if all(krein_conditions(semigroup, u))]


def degenerate_elements(semigroup: StarSemigroup) -> List[ElementId]:
    """u = u* with 3u = u that are not admissible"""
    return [
        u for u in semigroup.elements
        if semigroup.conj(u) == u and semigroup.multiple(3, u) == u and not all(krein_conditions(semigroup, u))
    ]


def instance_digest(semigroup: StarSemigroup) -> str:
    text = repr((semigroup.names, semigroup.table, semigroup.star, semigroup.zero))
    return sha256(text.encode("utf-8")).hexdigest()


def measure_record(semigroup: StarSemigroup, u: ElementId, item: Union[DualMeasure, PDTable],
                   m_count: Optional[int] = None, tol: float = DEFAULT_TOLERANCE) -> MeasureRecord:
    """Shift operator data for one φ given as a measure or as a raw table"""
    if isinstance(item, DualMeasure):
        phi, measure = moment_function(semigroup, item), item
    else:
        phi, measure = item, item.measure

    realization = build_gram(semigroup, phi, tol)
    shift = shift_operator(realization, u)
    matrix = shift.matrix
    minus = kernel_dimension(matrix, -1, tol)

    squares = None
    if hermitian_defect(phi.shifted(u), tol) is None:
        squares = negative_squares(semigroup, phi, u, tol)

    record = MeasureRecord(
        provenance=phi.provenance,
        atoms=measure.atoms if measure is not None else (),
        rank=realization.rank,
        residual=shift.residual,
        selfadjoint=selfadjoint_check(matrix),
        involutive=involution_check(matrix),
        adjoint_ok=adjoint_check(realization, u),
        minus_dimension=minus,
        plus_dimension=kernel_dimension(matrix, 1, tol),
        null_dimension=kernel_dimension(matrix, 0, tol),
        negative_squares=squares,
        bound_ok=None if m_count is None else minus <= m_count / 2,
    )
    if semigroup.multiple(3, u) == u:
        record.cube_ok = power_check(matrix, 3)
    if measure is not None:
        characters = enumerate_characters(semigroup)
        record.minus_atoms = sum(1 for k in measure.support if characters[k](u) == MINUS_ONE)
        dual = dual_realization(semigroup, measure, u, tol)
        record.dual_dimension = dual.dimension
        record.dual_minus = dual.minus_dimension
        record.dual_plus = dual.plus_dimension
    return record


def analyze(semigroup: StarSemigroup, u: ElementId, items: Sequence[Union[DualMeasure, PDTable]],
            name: str = "", tol: float = DEFAULT_TOLERANCE) -> SymmetryReport:
    """
    Full report for u: quotient conditions, counts, one record per φ and the verdict.

    :raises NoZeroElement: If S has no zero.
    """
    conditions = krein_conditions(semigroup, u)
    counts = _counts(semigroup, u)
    admissible = all(conditions)
    digest = instance_digest(semigroup)
    report = SymmetryReport(
        instance=name or digest[:12],
        instance_hash=digest,
        u_label=semigroup.label(u),
        u=u,
        quotient_conditions=conditions,
        counts=counts,
        character_digest=character_digest(enumerate_characters(semigroup)),
    )
    for item in items:
        report.records.append(measure_record(semigroup, u, item, counts.m_count if admissible else None, tol))

    report.verdict = Verdict.PONTRYAGIN if admissible else Verdict.NOT_A_SYMMETRY
    if not admissible and report.records and all(r.selfadjoint and r.involutive for r in report.records):
        report.notes.append("u_φ is a selfadjoint involution for the given φ only; "
                            "some character separates [2u] from 0 or [u] from [u*]")

    is_degenerate_case = (
        semigroup.conj(u) == u and semigroup.multiple(3, u) == u and semigroup.add(u, u) != semigroup.zero
    )
    if is_degenerate_case and not admissible:
        degenerate = any(r.null_dimension > 0 for r in report.records)
        report.notes.append("3u = u and u = u*: u_φ is bounded and selfadjoint"
                            + (", the form ⟨u_φ·,·⟩ is degenerate" if degenerate else ""))
    if counts.raw_moved_count > counts.m_count:
        report.notes.append(f"u moves {counts.raw_moved_count} elements but only {counts.m_count} classes of S/∼")

    DBM.i("Analyzed u=$u on $name: $verdict", u=report.u_label, name=report.instance, verdict=report.verdict.value)
    return report


def projection_spectra_check(source: StarSemigroup, target: StarSemigroup, h, u: ElementId, phi: PDTable,
                tol: float = DEFAULT_TOLERANCE) -> bool:
    """
    Spectral invariants of u_{φ∘h} and h(u)_φ agree: rank, sorted
    eigenvalues and the kernel dimensions at ±1.

    :raises SemigroupError: If h is not onto or does not preserve zero.
    :raises PreconditionError: If u fails the Krein conditions.
    """
    if h.domain != source or h.codomain != target:
        raise SemigroupError("Homomorphism does not connect the given semigroups")
    if not h.is_onto:
        raise SemigroupError("Homomorphism is not onto")
    if not h.preserves_zero:
        raise SemigroupError("Homomorphism does not preserve zero")
    if not all(krein_conditions(source, u)):
        raise PreconditionError(f"{source.label(u)} does not satisfy [2u] = 0 and [u] = [u*]")

    upstairs = shift_operator(build_gram(source, phi.pulled_back(h), tol), u).matrix
    downstairs = shift_operator(build_gram(target, phi, tol), h(u)).matrix
    if upstairs.shape != downstairs.shape:
        return False
    first, second = spectrum(upstairs), spectrum(downstairs)
    reference = tol * max(1.0, float(np.max(np.abs(first))) if first.size else 1.0)
    return (
        bool(np.all(np.abs(first - second) <= reference))
        and kernel_dimension(upstairs, -1, tol) == kernel_dimension(downstairs, -1, tol)
        and kernel_dimension(upstairs, 1, tol) == kernel_dimension(downstairs, 1, tol)
    )


def quotient_kernel_check(semigroup: StarSemigroup, u: ElementId, trials: int = 10, seed=0,
                     tol: float = DEFAULT_TOLERANCE) -> bool:
    """
    dim ker(u_φ + I) = dim ker([u]_ψ + I) for sampled ψ on S/∼ and φ = ψ∘π.

    :raises PreconditionError: If u fails the Krein conditions.
    """
    if not all(krein_conditions(semigroup, u)):
        raise PreconditionError(f"{semigroup.label(u)} does not satisfy [2u] = 0 and [u] = [u*]")
    q = separative_quotient(semigroup)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    count = len(enumerate_characters(q.quotient))
    for _ in range(trials):
        psi = moment_function(q.quotient, random_measure(q.quotient, int(rng.integers(1, count + 1)), rng))
        phi = psi.pulled_back(q.projection)
        upstairs = shift_operator(build_gram(semigroup, phi, tol), u).matrix
        downstairs = shift_operator(build_gram(q.quotient, psi, tol), q.class_of(u)).matrix
        if kernel_dimension(upstairs, -1, tol) != kernel_dimension(downstairs, -1, tol):
            return False
    return True


def uniform_minus_measure(semigroup: StarSemigroup, u: ElementId) -> DualMeasure:
    return minus_measure(semigroup, u)


def violating_character(semigroup: StarSemigroup, u: ElementId) -> Optional[int]:
    """Index of a character with σ(2u) != 1 or σ(u) != σ(u*), if any"""
    for k, c in enumerate(enumerate_characters(semigroup)):
        if c(semigroup.add(u, u)) != c(semigroup.zero) or c(u) != c(semigroup.conj(u)):
            return k
    return None
