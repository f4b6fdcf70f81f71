"""Dense complex linear algebra on small square matrices.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Everything here is a pure function of its inputs.
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DimensionError, HermiticityError

TOL_HERM = 1e-10
TOL_EIG = 1e-12
TOL_PSD = 1e-8

MAX_DIM = 81
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order and the matching eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_square(a, name="matrix") -> np.ndarray:
    """Coerce ``a`` to a square complex matrix or raise ``DimensionError``."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    return m


def dagger(a) -> np.ndarray:
    return np.asarray(a).conj().T


def is_hermitian(h, tol=TOL_HERM) -> bool:
    h = np.asarray(h)
    return bool(np.max(np.abs(h - h.conj().T), initial=0.0) <= tol)


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i*db + k, j*db + l)`` equals ``a[i, j] * b[k, l]``."""
    return np.kron(as_square(a, "a"), as_square(b, "b"))


def partial_trace(rho, dA: int, dB: int, keep: Literal["A", "B"] = "A") -> np.ndarray:
    """Trace out one factor of a bipartite operator on C^dA (x) C^dB."""
    rho = as_square(rho, "rho")
    if dA < 1 or dB < 1 or rho.shape[0] != dA * dB:
        raise DimensionError(
            f"operator of dimension {rho.shape[0]} does not factor as {dA} x {dB}"
        )
    t = rho.reshape(dA, dB, dA, dB)
    if keep == "A":
        return np.einsum("ikjk->ij", t)
    if keep == "B":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    # Largest-magnitude component of each column made real and nonnegative;
    # ties resolve to the lowest index.
    idx = np.argmax(np.abs(vecs), axis=0)
    pivots = vecs[idx, np.arange(vecs.shape[1])]
    mags = np.abs(pivots)
    phases = np.where(mags > 0, pivots.conj() / np.where(mags > 0, mags, 1.0), 1.0)
    out = vecs * phases
    out[idx, np.arange(vecs.shape[1])] = mags
    return out


def jacobi_eigh(h, tol=TOL_EIG, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Each rotation first removes the phase of ``h[p, q]`` with a diagonal
    unitary and then applies the real symmetric Jacobi rotation that
    annihilates it. Sweeps stop once the largest off-diagonal magnitude
    drops below ``tol * max(1, ||h||_F)``.

    Returns ``(eigenvalues, eigenvectors)`` unsorted, as produced by the
    sweeps.
    """
    a = np.array(as_square(h, "h"), dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if off.max(initial=0.0) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < threshold * 1e-3:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G = diag-phase(q) * real rotation; A <- G^H A G, V <- V G
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                pq = [p, q]
                a[:, pq] = a[:, pq] @ g
                a[pq, :] = g.conj().T @ a[pq, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, pq] = v[:, pq] @ g
    return np.real(np.diag(a)).copy(), v


def hermitian_eig(h, method: Literal["jacobi", "lapack"] = "jacobi") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come back in descending order. Each eigenvector is
    rephased so its largest-magnitude component is real and nonnegative,
    which makes the output deterministic. Inside a degenerate eigenspace
    the chosen basis is arbitrary.

    The default ``method="jacobi"`` runs the cyclic Jacobi solver in
    :func:`jacobi_eigh`, so results do not depend on the LAPACK build.
    ``method="lapack"`` calls ``numpy.linalg.eigh`` instead.
    """
    h = as_square(h, "h")
    if h.shape[0] > MAX_DIM:
        raise DimensionError(f"dimension {h.shape[0]} exceeds supported maximum {MAX_DIM}")
    if not is_hermitian(h):
        err = float(np.max(np.abs(h - h.conj().T)))
        raise HermiticityError(f"matrix is not Hermitian (max |H - H^dagger| = {err:.3e})")
    h = 0.5 * (h + h.conj().T)
    if method == "jacobi":
        w, vecs = jacobi_eigh(h)
    elif method == "lapack":
        w, vecs = np.linalg.eigh(h)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], _fix_phases(vecs[:, order]))


def eigvalsh(h) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in descending order (LAPACK, values only)."""
    h = as_square(h, "h")
    return np.linalg.eigvalsh(0.5 * (h + h.conj().T))[::-1]
