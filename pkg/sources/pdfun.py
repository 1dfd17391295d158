"""
Positive definite functions on a *-semigroup.

Moment functions L(μ) come from finitely supported positive measures on the
character set, referenced by index into `enumerate_characters`.
"""
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .characters import Character, MINUS_ONE, ONE, enumerate_characters, quotient_conditions, separative_quotient
from .core import ElementId, PreconditionError, StarSemigroup

DEFAULT_TOLERANCE = 1e-8
WEIGHT_RANGE = (0.1, 10.0)


class NotHermitianSymmetric(ValueError):
    def __init__(self, message: str, witness: ElementId):
        super().__init__(message)
        self.witness = witness


class TooManyAtoms(ValueError):
    pass


@dataclass(frozen=True)
class DualMeasure:
    """Atoms (character index, positive weight)"""

    atoms: Tuple[Tuple[int, float], ...]

    def __post_init__(self):
        atoms = tuple((int(k), float(w)) for k, w in self.atoms)
        indices = [k for k, _ in atoms]
        if len(set(indices)) != len(indices):
            raise ValueError("Measure atoms must sit on distinct characters")
        if any(not w > 0 for _, w in atoms):
            raise ValueError("Measure weights must be strictly positive")
        if any(k < 0 for k in indices):
            raise ValueError("Character indices must be non-negative")
        object.__setattr__(self, "atoms", atoms)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.atoms)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=float)

    def check_range(self, character_count: int):
        if any(k >= character_count for k in self.support):
            raise ValueError(f"Character index out of range (only {character_count} characters)")

    def __add__(self, other: "DualMeasure") -> "DualMeasure":
        merged = dict(self.atoms)
        for k, w in other.atoms:
            merged[k] = merged.get(k, 0.0) + w
        return DualMeasure(tuple(sorted(merged.items())))


@dataclass(frozen=True)
class PDTable:
    """Function values φ(s), one per element, with their origin"""

    semigroup: StarSemigroup
    values: Tuple[complex, ...]
    measure: Optional[DualMeasure] = None

    def __post_init__(self):
        values = tuple(complex(v) for v in self.values)
        if len(values) != self.semigroup.size:
            raise ValueError("A function table needs one value per element")
        object.__setattr__(self, "values", values)

    @property
    def provenance(self) -> str:
        return "raw" if self.measure is None else "moment"

    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=complex)

    def shifted(self, u: ElementId) -> "PDTable":
        """ψ = φ(· + u); not positive definite in general"""
        return PDTable(self.semigroup, tuple(self.values[s] for s in self.semigroup.shifted(u)))

    def pulled_back(self, h) -> "PDTable":
        """φ ∘ h on the domain of h"""
        return PDTable(h.domain, tuple(self.values[h(s)] for s in h.domain.elements))


class PositiveDefiniteResult(NamedTuple):
    positive: bool
    min_eigenvalue: float


class ShiftIdentities(NamedTuple):
    symmetric_shift: bool
    double_shift: bool
    norm_shift: bool

    @property
    def all_hold(self) -> bool:
        return self.symmetric_shift and self.double_shift and self.norm_shift


def scale(matrix: np.ndarray) -> float:
    """max(1, ‖·‖_∞), the reference for tolerance classification"""
    if matrix.size == 0:
        return 1.0
    return max(1.0, float(np.linalg.norm(matrix, np.inf)))


def moment_function(semigroup: StarSemigroup, measure: DualMeasure) -> PDTable:
    """φ(s) = Σ_k w_k σ_k(s)"""
    characters = enumerate_characters(semigroup)
    measure.check_range(len(characters))
    values = np.zeros(semigroup.size, dtype=complex)
    for k, weight in measure.atoms:
        values += weight * characters[k].to_numeric()
    return PDTable(semigroup, tuple(values), measure)


def hermitian_defect(phi: PDTable, tol: float = DEFAULT_TOLERANCE) -> Optional[ElementId]:
    """First s with φ(s*) != conj φ(s), or None"""
    values = phi.array()
    reference = tol * max(1.0, float(np.max(np.abs(values))) if values.size else 1.0)
    for s in phi.semigroup.elements:
        if abs(values[phi.semigroup.conj(s)] - np.conj(values[s])) > reference:
            return s
    return None


def require_hermitian(phi: PDTable, tol: float = DEFAULT_TOLERANCE):
    witness = hermitian_defect(phi, tol)
    if witness is not None:
        label = phi.semigroup.label(witness)
        raise NotHermitianSymmetric(f"φ({label}*) is not the conjugate of φ({label})", witness)


def gram_matrix(phi: PDTable) -> np.ndarray:
    """G[t][s] = φ(t* + s)"""
    S = phi.semigroup
    index = np.array([[S.add(S.conj(t), s) for s in S.elements] for t in S.elements], dtype=np.intp)
    return phi.array()[index]


def is_positive_definite(semigroup: StarSemigroup, phi: PDTable,
                         tol: float = DEFAULT_TOLERANCE) -> PositiveDefiniteResult:
    """
    Inertia test of the full Gram matrix; every finite tuple of elements
    selects rows and columns of it.

    :raises NotHermitianSymmetric: With the offending element.
    """
    require_hermitian(phi, tol)
    gram = gram_matrix(phi)
    gram = (gram + gram.conj().T) / 2
    eigenvalues = np.linalg.eigvalsh(gram)
    smallest = float(eigenvalues[0])
    return PositiveDefiniteResult(smallest >= -tol * scale(gram), smallest)


def shift_identities_check(semigroup: StarSemigroup, u: ElementId, phi: PDTable,
                           tol: float = DEFAULT_TOLERANCE) -> ShiftIdentities:
    """
    φ(s+u) = φ(s+u*), φ(s+2u) = φ(s) and φ(s*+u*+u+s) = φ(s*+s) for every s.

    :raises PreconditionError: If [2u] = 0, [u] = [u*] fail or φ is not positive definite.
    """
    if not all(quotient_conditions(separative_quotient(semigroup), u)):
        raise PreconditionError(f"{semigroup.label(u)} does not satisfy [2u] = 0 and [u] = [u*]")
    if not is_positive_definite(semigroup, phi, tol).positive:
        raise PreconditionError("φ is not positive definite")

    S, values = semigroup, phi.array()
    reference = tol * max(1.0, float(np.max(np.abs(values))))
    u_star = S.conj(u)
    two_u = S.add(u, u)

    def holds(left: Iterable[ElementId], right: Iterable[ElementId]) -> bool:
        return bool(np.all(np.abs(values[list(left)] - values[list(right)]) <= reference))

    return ShiftIdentities(
        holds((S.add(s, u) for s in S.elements), (S.add(s, u_star) for s in S.elements)),
        holds((S.add(s, two_u) for s in S.elements), S.elements),
        holds(
            (S.add(S.add(S.conj(s), u_star), S.add(u, s)) for s in S.elements),
            (S.add(S.conj(s), s) for s in S.elements),
        ),
    )


def _generator(seed: Union[int, np.random.Generator, Sequence[int]]) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_measure(semigroup: StarSemigroup, k: int,
                   seed: Union[int, np.random.Generator, Sequence[int]]) -> DualMeasure:
    """
    k distinct characters drawn without replacement, weights uniform in [0.1, 10].

    :raises TooManyAtoms: If k exceeds the number of characters.
    """
    count = len(enumerate_characters(semigroup))
    if k > count:
        raise TooManyAtoms(f"Cannot place {k} atoms on {count} characters")
    if k < 0:
        raise ValueError("Atom count must be non-negative")
    rng = _generator(seed)
    indices = sorted(int(x) for x in rng.choice(count, size=k, replace=False))
    weights = rng.uniform(*WEIGHT_RANGE, size=k)
    return DualMeasure(tuple(zip(indices, (float(w) for w in weights))))


def uniform_measure(indices: Iterable[int], weight: float = 1.0) -> DualMeasure:
    return DualMeasure(tuple((k, weight) for k in sorted(set(indices))))


def dirac(index: int, weight: float = 1.0) -> DualMeasure:
    return DualMeasure(((index, weight),))


def add_measures(first: DualMeasure, second: DualMeasure) -> DualMeasure:
    return first + second


def characters_at(semigroup: StarSemigroup, u: ElementId, value) -> Tuple[int, ...]:
    """Indices of characters σ with σ(u) equal to `value`"""
    return tuple(k for k, c in enumerate(enumerate_characters(semigroup)) if c(u) == value)


def minus_measure(semigroup: StarSemigroup, u: ElementId) -> DualMeasure:
    """Unit weights on every character with σ(u) = -1"""
    return uniform_measure(characters_at(semigroup, u, MINUS_ONE))


def plus_measure(semigroup: StarSemigroup, u: ElementId) -> DualMeasure:
    """Unit weights on every character with σ(u) = 1"""
    return uniform_measure(characters_at(semigroup, u, ONE))


def full_measure(semigroup: StarSemigroup) -> DualMeasure:
    return uniform_measure(range(len(enumerate_characters(semigroup))))


def support_characters(semigroup: StarSemigroup, measure: DualMeasure) -> Tuple[Character, ...]:
    characters = enumerate_characters(semigroup)
    measure.check_range(len(characters))
    return tuple(characters[k] for k in measure.support)
