"""Representation matrices and their ordered eigenvalue spectra.

The three representation matrices of a graph are the adjacency matrix,
the unnormalised Laplacian D - A, and the random-walk normalised
Laplacian D^{-1}(D - A). The last shares its eigenvalues with the
symmetric form D^{-1/2}(D - A)D^{-1/2}, which is what we actually
decompose; everything downstream works on eigenvalues, and clustering
recovers the random-walk eigenvectors from the symmetric ones.

Eigendecomposition uses cyclic Jacobi rotations: deterministic, exact
symmetry in, orthonormal vectors out, entirely adequate at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graphs import DEGREE_TOL, Graph, degree_summary

JACOBI_MAX_SWEEPS = 100
# Convergence: off-diagonal Frobenius norm <= this times the full Frobenius norm.
JACOBI_OFF_TOL = 1e-12
RESIDUAL_TOL = 1e-8
ORTHONORMALITY_TOL = 1e-8
# |eigenvalue| below this counts as zero (e.g. Laplacian null space).
ZERO_EIGENVALUE_TOL = 1e-8


class RepresentationKind(Enum):
    ADJACENCY = "A"
    LAPLACIAN = "L"
    NORMALIZED_LAPLACIAN = "Lrw"


class UndefinedRepresentationError(ValueError):
    """Normalised Laplacian requested for a graph with an isolated vertex."""


class EigensolverError(RuntimeError):
    """Jacobi iteration failed to converge or produced an invalid decomposition."""


@dataclass(frozen=True, eq=False)
class RepMatrix:
    """A representation matrix; ``sym_surrogate`` marks the L_sym stand-in."""

    kind: RepresentationKind
    entries: np.ndarray
    sym_surrogate: bool


@dataclass(frozen=True, eq=False)
class EigenPairs:
    """Eigenvalues in ascending order, column i of vectors paired with values[i]."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in the kind's convention order with their Gershgorin support.

    Adjacency spectra are descending; both Laplacian spectra ascending.
    """

    kind: RepresentationKind
    values: np.ndarray
    support: tuple[float, float]
    support_length: float

    @property
    def n(self) -> int:
        return len(self.values)


def build_matrix(g: Graph, kind: RepresentationKind) -> RepMatrix:
    """Assemble the requested representation matrix, exactly symmetric.

    For the normalised Laplacian the symmetric form L_sym is returned
    (it has the same eigenvalues as the random-walk form, which is not
    symmetric); the ``sym_surrogate`` flag records the substitution.
    Requires d_min > 0 in that case.
    """
    ds = degree_summary(g)
    a = np.array(g.weights)
    if kind is RepresentationKind.ADJACENCY:
        return RepMatrix(kind=kind, entries=a, sym_surrogate=False)
    lap = np.diag(ds.degrees) - a
    if kind is RepresentationKind.LAPLACIAN:
        return RepMatrix(kind=kind, entries=lap, sym_surrogate=False)
    if kind is RepresentationKind.NORMALIZED_LAPLACIAN:
        if ds.d_min <= DEGREE_TOL:
            raise UndefinedRepresentationError(
                "normalised Laplacian is undefined for d_min = 0 (isolated vertex)"
            )
        inv_sqrt = 1.0 / np.sqrt(ds.degrees)
        # Elementwise scaling keeps the matrix exactly symmetric.
        lsym = lap * np.outer(inv_sqrt, inv_sqrt)
        return RepMatrix(kind=kind, entries=lsym, sym_surrogate=True)
    raise ValueError(f"unknown representation kind {kind!r}")


def _jacobi(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, float, bool]:
    """Cyclic Jacobi sweeps; returns (diagonal, rotations, off_norm, converged)."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return np.diag(a).copy(), v, 0.0, True
    threshold = JACOBI_OFF_TOL * np.linalg.norm(a)
    off = _off_norm(a)
    for _ in range(JACOBI_MAX_SWEEPS):
        if off <= threshold:
            return np.diag(a).copy(), v, off, True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + 100.0 * abs(apq) == abs(h):
                    # pivot negligible against the diagonal gap; the exact
                    # tangent would overflow, its limit is apq/h
                    t = apq / h
                else:
                    theta = 0.5 * h / apq
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
        off = _off_norm(a)
    return np.diag(a).copy(), v, off, off <= threshold


def _off_norm(a: np.ndarray) -> float:
    # Summed directly over the off-diagonal entries: subtracting the diagonal
    # from the full Frobenius norm would cancel catastrophically near zero.
    off = np.array(a)
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def eig_sym(m: np.ndarray, label: str = "matrix") -> EigenPairs:
    """Full eigendecomposition of a symmetric matrix via cyclic Jacobi.

    Values come back ascending; ties keep the rotation-order index, so
    the output is deterministic for identical input. Raises
    :class:`EigensolverError` if the sweep cap is hit or the residual /
    orthonormality checks fail.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{label}: expected a square matrix, got shape {m.shape}")
    if not np.array_equal(m, m.T):
        raise ValueError(f"{label}: matrix is not symmetric")
    diag, vecs, off, converged = _jacobi(m)
    if not converged:
        raise EigensolverError(
            f"{label}: Jacobi did not converge within {JACOBI_MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {off:.3e})"
        )
    n = m.shape[0]
    order = np.lexsort((np.arange(n), diag))
    values = diag[order]
    vectors = vecs[:, order]
    _validate_pairs(m, values, vectors, label)
    return EigenPairs(values=values, vectors=vectors)


def _validate_pairs(m: np.ndarray, values: np.ndarray, vectors: np.ndarray, label: str) -> None:
    n = m.shape[0]
    if n == 0:
        return
    residuals = np.linalg.norm(m @ vectors - vectors * values, axis=0)
    allowed = RESIDUAL_TOL * np.maximum(1.0, np.abs(values))
    if np.any(residuals > allowed):
        worst = float((residuals - allowed).max())
        raise EigensolverError(f"{label}: eigenpair residual exceeds tolerance by {worst:.3e}")
    gram_defect = float(np.abs(vectors.T @ vectors - np.eye(n)).max())
    if gram_defect > ORTHONORMALITY_TOL:
        raise EigensolverError(f"{label}: eigenvectors not orthonormal (defect {gram_defect:.3e})")


def spectral_support(kind: RepresentationKind, d_max: float) -> tuple[float, float]:
    """Gershgorin interval containing all eigenvalues of the given kind."""
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    if kind is RepresentationKind.ADJACENCY:
        return (-d_max, d_max)
    if kind is RepresentationKind.LAPLACIAN:
        return (0.0, 2.0 * d_max)
    return (0.0, 2.0)


def eigensystem(g: Graph, kind: RepresentationKind) -> tuple[Spectrum, np.ndarray]:
    """Spectrum in convention order plus the matching eigenvector columns.

    For the normalised Laplacian the vectors are those of the symmetric
    surrogate; multiply by D^{-1/2} to obtain random-walk eigenvectors.
    """
    rep = build_matrix(g, kind)
    pairs = eig_sym(rep.entries, label=f"{kind.value} matrix (n={g.n})")
    if kind is RepresentationKind.ADJACENCY:
        order = np.argsort(-pairs.values, kind="stable")
        values, vectors = pairs.values[order], pairs.vectors[:, order]
    else:
        values, vectors = pairs.values, pairs.vectors
    d_max = degree_summary(g).d_max
    lo, hi = spectral_support(kind, d_max)
    if len(values) and (values.min() < lo - 1e-9 or values.max() > hi + 1e-9):
        raise EigensolverError(
            f"{kind.value} eigenvalues escape the Gershgorin support [{lo}, {hi}]"
        )
    spec = Spectrum(kind=kind, values=values, support=(lo, hi), support_length=hi - lo)
    return spec, vectors


def spectrum(g: Graph, kind: RepresentationKind) -> Spectrum:
    """Ordered eigenvalues of the chosen representation matrix."""
    spec, _ = eigensystem(g, kind)
    return spec


def normalized_eigengaps(s: Spectrum) -> np.ndarray:
    """Consecutive eigenvalue gaps divided by the spectral support length.

    All entries are non-negative under the spectrum's ordering convention.
    A zero-length support (edgeless graph) means a one-point spectrum, so
    the gaps are zero.
    """
    if s.n < 2:
        raise ValueError("eigengaps need at least two eigenvalues")
    if s.kind is RepresentationKind.ADJACENCY:
        gaps = s.values[:-1] - s.values[1:]
    else:
        gaps = s.values[1:] - s.values[:-1]
    if s.support_length == 0.0:
        return np.zeros_like(gaps)
    return gaps / s.support_length
