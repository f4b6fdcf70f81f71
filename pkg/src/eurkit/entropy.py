"""Entropic functionals of bipartite states, all in bits."""

import numpy as np

from .errors import DimensionError, DomainError
from .measurements import MeasurementSet, ProjectiveBasis
from .states import DensityMatrix

TOL_PROB = 1e-10
TOL_NEG_PROB = 1e-12


def _bits(p: np.ndarray) -> float:
    nz = p[p > 0]
    h = float(-np.sum(nz * np.log2(nz)))
    # avoid reporting -0.0
    return h if h > 0 else 0.0


def shannon(p) -> float:
    """Shannon entropy ``-sum p_i log2 p_i`` with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DomainError(f"probability vector must be 1-d and non-empty, got shape {p.shape}")
    if p.min() < -TOL_NEG_PROB:
        raise DomainError(f"probability vector has negative entry {p.min():.3e}", float(p.min()))
    if abs(p.sum() - 1.0) > TOL_PROB:
        raise DomainError(f"probabilities sum to {p.sum()!r}, expected 1", float(p.sum()))
    return _bits(np.clip(p, 0.0, None))


def von_neumann(rho: DensityMatrix) -> float:
    """Von Neumann entropy; eigenvalues in [-1e-8, 0) count as zero."""
    return _bits(rho.eigenvalues())


def conditional_entropy(rho_ab: DensityMatrix) -> float:
    """``S(A|B) = S(AB) - S(B)``."""
    return von_neumann(rho_ab) - von_neumann(rho_ab.marginal("B"))


def mutual_information(rho_ab: DensityMatrix) -> float:
    """``I(A:B) = S(A) + S(B) - S(AB)``."""
    return (
        von_neumann(rho_ab.marginal("A"))
        + von_neumann(rho_ab.marginal("B"))
        - von_neumann(rho_ab)
    )


def _dephased_blocks(rho_ab: DensityMatrix, basis: ProjectiveBasis) -> np.ndarray:
    # blocks[j] = <u_j| rho_AB |u_j>, an unnormalized operator on B
    if basis.dim != rho_ab.dA:
        raise DimensionError(
            f"basis dimension {basis.dim} does not match subsystem A dimension {rho_ab.dA}"
        )
    dA, dB = rho_ab.dA, rho_ab.dB
    t = rho_ab.matrix.reshape(dA, dB, dA, dB)
    u = basis.vectors
    return np.einsum("aj,abcd,cj->jbd", u.conj(), t, u)


def post_measurement_state(rho_ab: DensityMatrix, basis: ProjectiveBasis) -> DensityMatrix:
    """Classical-quantum state after measuring A projectively in ``basis``.

    ``rho_MB = sum_j (P_j (x) I) rho_AB (P_j (x) I)`` with ``P_j = |u_j><u_j|``,
    expressed in the original product basis.
    """
    blocks = _dephased_blocks(rho_ab, basis)
    u = basis.vectors
    dA, dB = rho_ab.dA, rho_ab.dB
    out = np.einsum("aj,cj,jbd->abcd", u, u.conj(), blocks).reshape(dA * dB, dA * dB)
    return DensityMatrix(0.5 * (out + out.conj().T), dA, dB)


def outcome_distribution(rho_ab: DensityMatrix, basis: ProjectiveBasis) -> DensityMatrix:
    """Outcome register of the measurement as a diagonal ``dA``-dimensional state."""
    probs = np.trace(_dephased_blocks(rho_ab, basis), axis1=1, axis2=2).real
    return DensityMatrix(np.diag(probs).astype(complex), rho_ab.dA, 1)


def measured_conditional(rho_ab: DensityMatrix, basis: ProjectiveBasis) -> float:
    """``S(M|B) = S(rho_MB) - S(rho_B)`` for a measurement of A in ``basis``."""
    return von_neumann(post_measurement_state(rho_ab, basis)) - von_neumann(
        rho_ab.marginal("B")
    )


def holevo(rho_ab: DensityMatrix, basis: ProjectiveBasis) -> float:
    """Holevo quantity ``I(M:B) = S(rho_M) + S(rho_B) - S(rho_MB)``."""
    return (
        von_neumann(outcome_distribution(rho_ab, basis))
        + von_neumann(rho_ab.marginal("B"))
        - von_neumann(post_measurement_state(rho_ab, basis))
    )


def uncertainty_sum(rho_ab: DensityMatrix, ms: MeasurementSet) -> float:
    """Total entropic uncertainty ``sum_m S(M_m|B)`` over the measurement set."""
    return sum(measured_conditional(rho_ab, b) for b in ms.bases)
