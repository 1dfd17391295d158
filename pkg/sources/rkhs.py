"""
Finite dimensional model of the reproducing kernel Hilbert space of φ.

The kernel sections K_s are represented by the columns c_s of
C = Λ_r^{1/2} V_r^*, where G = V Λ V^* is the Gram matrix. Shift operators
are r×r matrices in that orthonormal basis, so operator adjoints are plain
conjugate transposes.
"""
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .characters import character_matrix, enumerate_characters
from .core import ElementId, StarSemigroup
from .pdfun import (
    DEFAULT_TOLERANCE,
    DualMeasure,
    PDTable,
    gram_matrix,
    require_hermitian,
    scale,
    support_characters,
)

OPERATOR_TOLERANCE = 1e-7


class NotPositiveDefinite(ValueError):
    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class IllDefinedShift(ValueError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class Inertia(NamedTuple):
    negative: int
    zero: int
    positive: int


def inertia(matrix: np.ndarray, tol: float = DEFAULT_TOLERANCE) -> Inertia:
    """Eigenvalue sign counts of a Hermitian matrix, zero band ±tol·max(1, ‖H‖_∞)"""
    if matrix.size == 0:
        return Inertia(0, 0, 0)
    hermitian = (matrix + matrix.conj().T) / 2
    eigenvalues = np.linalg.eigvalsh(hermitian)
    band = tol * scale(hermitian)
    negative = int(np.sum(eigenvalues < -band))
    positive = int(np.sum(eigenvalues > band))
    return Inertia(negative, len(eigenvalues) - negative - positive, positive)


@dataclass(frozen=True, eq=False)
class GramRealization:
    semigroup: StarSemigroup
    phi: PDTable
    gram: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int
    coords: np.ndarray
    tol: float


def build_gram(semigroup: StarSemigroup, phi: PDTable, tol: float = DEFAULT_TOLERANCE) -> GramRealization:
    """
    Assemble G, diagonalize it and fix coordinates of the kernel sections.

    :raises NotPositiveDefinite: If G has an eigenvalue below the zero band.
    """
    require_hermitian(phi, tol)
    gram = gram_matrix(phi)
    gram = (gram + gram.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(gram)
    band = tol * scale(gram)
    if eigenvalues[0] < -band:
        raise NotPositiveDefinite(f"Gram matrix has eigenvalue {eigenvalues[0]:.3e}", float(eigenvalues[0]))

    keep = eigenvalues > band
    # largest first
    order = np.argsort(-eigenvalues[keep], kind="stable")
    values = eigenvalues[keep][order]
    vectors = eigenvectors[:, keep][:, order]
    coords = np.sqrt(values)[:, None] * vectors.conj().T
    return GramRealization(semigroup, phi, gram, values, vectors, int(keep.sum()), coords, tol)


@dataclass(frozen=True, eq=False)
class ShiftOperator:
    u: ElementId
    matrix: np.ndarray
    residual: float


def shift_operator(realization: GramRealization, u: ElementId,
                   residual_tolerance: float = OPERATOR_TOLERANCE) -> ShiftOperator:
    """
    Solve M·C = C·P_u with the pseudo-inverse of C.

    :raises IllDefinedShift: If the residual shows that Σξ K_s = 0 does not
        imply Σξ K_{s+u} = 0.
    """
    coords = realization.coords
    shifted = coords[:, list(realization.semigroup.shifted(u))]
    if realization.rank == 0:
        return ShiftOperator(u, np.zeros((0, 0), dtype=complex), 0.0)
    # pinv(C) = V_r Λ_r^{-1/2}
    inverse = realization.eigenvectors / np.sqrt(realization.eigenvalues)[None, :]
    matrix = shifted @ inverse
    residual = float(np.linalg.norm(matrix @ coords - shifted))
    limit = residual_tolerance * max(1.0, float(np.linalg.norm(coords)))
    if residual > limit:
        raise IllDefinedShift(f"Shift by {realization.semigroup.label(u)} is not well defined "
                              f"(residual {residual:.3e})", residual)
    return ShiftOperator(u, matrix, residual)


def kernel_dimension(matrix: np.ndarray, eigenvalue: complex, tol: float = DEFAULT_TOLERANCE) -> int:
    """dim ker(M − λI) by counting singular values in the zero band"""
    if matrix.size == 0:
        return 0
    shifted = matrix - eigenvalue * np.eye(matrix.shape[0])
    singular = np.linalg.svd(shifted, compute_uv=False)
    return int(np.sum(singular <= tol * scale(matrix)))


def selfadjoint_check(matrix: np.ndarray, tol: float = OPERATOR_TOLERANCE) -> bool:
    if matrix.size == 0:
        return True
    return bool(np.max(np.abs(matrix - matrix.conj().T)) <= tol * scale(matrix))


def involution_check(matrix: np.ndarray, tol: float = OPERATOR_TOLERANCE) -> bool:
    if matrix.size == 0:
        return True
    return bool(np.max(np.abs(matrix @ matrix - np.eye(matrix.shape[0]))) <= tol * scale(matrix))


def power_check(matrix: np.ndarray, power: int = 3, tol: float = OPERATOR_TOLERANCE) -> bool:
    """M^power == M, the operator form of power·u = u"""
    if matrix.size == 0:
        return True
    return bool(np.max(np.abs(np.linalg.matrix_power(matrix, power) - matrix)) <= tol * scale(matrix) ** power)


def reproducing_check(realization: GramRealization, tol: float = OPERATOR_TOLERANCE) -> bool:
    """⟨c_s, c_t⟩ = G[t][s] for all s, t"""
    coords = realization.coords
    inner = coords.conj().T @ coords
    return bool(np.max(np.abs(inner - realization.gram)) <= tol * scale(realization.gram))


def adjoint_check(realization: GramRealization, u: ElementId, tol: float = OPERATOR_TOLERANCE) -> bool:
    """The shift by u* is the adjoint of the shift by u"""
    forward = shift_operator(realization, u).matrix
    backward = shift_operator(realization, realization.semigroup.conj(u)).matrix
    if forward.size == 0:
        return True
    return bool(np.max(np.abs(forward.conj().T - backward)) <= tol * scale(forward))


def negative_squares(semigroup: StarSemigroup, phi: PDTable, u: ElementId, tol: float = DEFAULT_TOLERANCE) -> int:
    """
    Negative eigenvalue count of B[i][j] = φ(s_i + s_j* + u) over all of S.
    Any finite tuple gives a compression of B, so this is the supremum.

    :raises NotHermitianSymmetric: If ψ = φ(· + u) fails ψ(s*) = conj ψ(s).
    """
    psi = phi.shifted(u)
    require_hermitian(psi, tol)
    S = semigroup
    index = np.array([[S.add(s, S.conj(t)) for t in S.elements] for s in S.elements], dtype=np.intp)
    return inertia(psi.array()[index], tol).negative


@dataclass(frozen=True, eq=False)
class DualRealization:
    support: np.ndarray
    weights: np.ndarray
    basis: np.ndarray
    multiplier: np.ndarray
    dimension: int
    minus_dimension: int
    plus_dimension: int


def dual_realization(semigroup: StarSemigroup, measure: DualMeasure, u: ElementId,
                     tol: float = DEFAULT_TOLERANCE) -> DualRealization:
    """
    Model of ℋ^φ inside L²(μ): P^μ = span{(σ_j(s))_j}, the shift becomes
    multiplication by (σ_j(u))_j compressed to P^μ.
    """
    characters = support_characters(semigroup, measure)
    weights = measure.weights
    if not characters:
        empty = np.zeros((0, 0), dtype=complex)
        return DualRealization(empty, weights, empty, np.zeros(0, dtype=complex), 0, 0, 0)

    support = np.vstack([c.to_numeric() for c in characters])
    multiplier = support[:, u]
    # orthonormal basis of P^μ for the weighted inner product
    weighted = np.sqrt(weights)[:, None] * support
    left, singular, _ = np.linalg.svd(weighted, full_matrices=False)
    dimension = int(np.sum(singular > tol * max(1.0, float(singular[0]))))
    basis = left[:, :dimension]
    compressed = basis.conj().T @ (multiplier[:, None] * basis)
    return DualRealization(
        support,
        weights,
        basis,
        multiplier,
        dimension,
        kernel_dimension(compressed, -1, tol),
        kernel_dimension(compressed, 1, tol),
    )


def spectrum(matrix: np.ndarray) -> np.ndarray:
    """Sorted eigenvalues of a selfadjoint shift"""
    if matrix.size == 0:
        return np.zeros(0)
    return np.sort(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2))


def character_rank(semigroup: StarSemigroup, indices: Optional[Sequence[int]] = None,
                   tol: float = DEFAULT_TOLERANCE) -> int:
    """Rank of the character value matrix, optionally restricted to some characters"""
    characters = enumerate_characters(semigroup)
    if indices is not None:
        characters = [characters[k] for k in indices]
    if not characters:
        return 0
    singular = np.linalg.svd(character_matrix(characters), compute_uv=False)
    return int(np.sum(singular > tol * max(1.0, float(singular[0]))))
