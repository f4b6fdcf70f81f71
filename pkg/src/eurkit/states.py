"""Bipartite density matrices: parametric families and random ensembles.

Random states follow a two-step recipe. The spectrum is a point of the
probability simplex drawn by the stick-breaking rule in
:func:`simplex_probs_from_uniforms`. The eigenvectors are those of the
Hermitian matrix :func:`hermitian_from_real` builds out of a uniform real
matrix. The resulting ensemble is *not* the Haar / Hilbert-Schmidt
ensemble. It is reproduced as published because the experiments are
defined over it.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError, PsdError
from .linalg import (
    TOL_HERM,
    TOL_PSD,
    as_square,
    eigvalsh,
    hermitian_eig,
    is_hermitian,
    partial_trace,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_S = 1 / np.sqrt(2)
PHI_PLUS = np.array([_S, 0, 0, _S], dtype=complex)
PHI_MINUS = np.array([_S, 0, 0, -_S], dtype=complex)
PSI_PLUS = np.array([0, _S, _S, 0], dtype=complex)
PSI_MINUS = np.array([0, _S, -_S, 0], dtype=complex)

TOL_TRACE = 1e-10
PRNG_ALGORITHM = "philox4x64-10"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A trace-one positive semidefinite operator on C^dA (x) C^dB.

    Construction validates Hermiticity (1e-10), unit trace (1e-10) and
    positivity (smallest eigenvalue >= -1e-8). Single-party states use
    ``dB = 1``.
    """

    matrix: np.ndarray
    dA: int
    dB: int = 1
    min_eigenvalue: float = field(init=False, repr=False)
    _spectrum: np.ndarray = field(init=False, repr=False)
    _marginals: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        m = as_square(self.matrix, "density matrix")
        if self.dA < 1 or self.dB < 1 or m.shape[0] != self.dA * self.dB:
            raise DimensionError(
                f"matrix of dimension {m.shape[0]} does not match dims ({self.dA}, {self.dB})"
            )
        if not is_hermitian(m, TOL_HERM):
            err = float(np.max(np.abs(m - m.conj().T)))
            raise DomainError(f"density matrix is not Hermitian (deviation {err:.3e})", err)
        tr = np.trace(m).real
        if abs(tr - 1.0) > TOL_TRACE:
            raise DomainError(f"density matrix has trace {tr!r}, expected 1", tr)
        spectrum = eigvalsh(m)
        lam_min = float(spectrum[-1])
        if lam_min < -TOL_PSD:
            raise PsdError(f"density matrix has eigenvalue {lam_min:.3e} below -{TOL_PSD:g}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        spectrum.flags.writeable = False
        object.__setattr__(self, "min_eigenvalue", lam_min)
        object.__setattr__(self, "_spectrum", spectrum)

    @property
    def dim(self) -> int:
        return self.dA * self.dB

    def marginal(self, keep="A") -> "DensityMatrix":
        """Reduced state on subsystem ``keep`` (memoized)."""
        if keep not in self._marginals:
            red = partial_trace(self.matrix, self.dA, self.dB, keep=keep)
            self._marginals[keep] = DensityMatrix(red, red.shape[0], 1)
        return self._marginals[keep]

    def eigenvalues(self) -> np.ndarray:
        """Spectrum in descending order, with values in [-1e-8, 0) clamped to 0."""
        return np.clip(self._spectrum, 0.0, None)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return (self.dA, self.dB) == (other.dA, other.dB) and np.array_equal(
            self.matrix, other.matrix
        )

    __hash__ = None


def from_pure(psi, dA, dB=1) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()), dA, dB)


def product_state(rho_a: DensityMatrix, rho_b: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(rho_a.matrix, rho_b.matrix), rho_a.dim, rho_b.dim)


def maximally_mixed(dA, dB=1) -> DensityMatrix:
    n = dA * dB
    return DensityMatrix(np.eye(n, dtype=complex) / n, dA, dB)


def singlet() -> DensityMatrix:
    return from_pure(PSI_MINUS, 2, 2)


def werner(p: float) -> DensityMatrix:
    """Werner state ``(1-p)/4 * I + p |Psi-><Psi-|`` with purity ``p`` in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Werner purity must lie in [0, 1], got {p!r}", p)
    proj = np.outer(PSI_MINUS, PSI_MINUS.conj())
    return DensityMatrix((1 - p) / 4 * np.eye(4, dtype=complex) + p * proj, 2, 2)


def bell_eigenvalues(r1, r2, r3):
    """Weights of (Phi+, Phi-, Psi+, Psi-) in the Bell-diagonal state with correlations r."""
    return (
        (1 + r1 - r2 + r3) / 4,
        (1 - r1 + r2 + r3) / 4,
        (1 + r1 + r2 - r3) / 4,
        (1 - r1 - r2 - r3) / 4,
    )


def bell_diagonal(r1: float, r2: float, r3: float) -> DensityMatrix:
    """``(I (x) I + sum_i r_i sigma_i (x) sigma_i) / 4``.

    ``r`` must lie in the tetrahedron spanned by (-1,-1,-1), (-1,1,1),
    (1,-1,1), (1,1,-1); equivalently every Bell weight is nonnegative.
    """
    lam = bell_eigenvalues(r1, r2, r3)
    worst = min(lam)
    if worst < -1e-12:
        raise DomainError(
            f"correlation vector ({r1}, {r2}, {r3}) lies outside the tetrahedron "
            f"(Bell weight {worst:.6g} < 0)",
            worst,
        )
    m = np.eye(4, dtype=complex)
    for r, s in zip((r1, r2, r3), (SIGMA_X, SIGMA_Y, SIGMA_Z)):
        m = m + r * np.kron(s, s)
    return DensityMatrix(m / 4, 2, 2)


def bell_diagonal_family(p: float) -> DensityMatrix:
    """One-parameter Bell-diagonal family with ``r = (1 - 2p, -p, -p)``.

    Its Bell weights are ``p`` on Psi- and ``(1 - p)/2`` on each of Psi+
    and Phi+.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"purity must lie in [0, 1], got {p!r}", p)
    return bell_diagonal(1 - 2 * p, -p, -p)


@dataclass(frozen=True)
class RngStream:
    """Immutable descriptor of one reproducible random stream.

    Stream ``k`` under master seed ``s`` is the counter-based Philox
    generator keyed by ``(s, k)``. Every call to :meth:`generator` starts
    from the beginning of the stream.
    """

    master_seed: int
    stream_index: int = 0
    algorithm: str = PRNG_ALGORITHM

    def __post_init__(self):
        for name in ("master_seed", "stream_index"):
            v = getattr(self, name)
            if not 0 <= v < 2**64:
                raise DomainError(f"{name} must be a 64-bit unsigned integer, got {v!r}", v)
        if self.algorithm != PRNG_ALGORITHM:
            raise DomainError(f"unsupported PRNG algorithm {self.algorithm!r}")

    def generator(self) -> np.random.Generator:
        key = np.array([self.master_seed, self.stream_index], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def simplex_probs_from_uniforms(xi) -> np.ndarray:
    """Stick-breaking map from ``n - 1`` uniforms to a point of the n-simplex.

    ``p_k = (1 - xi_k ** (1 / (n - k))) * (1 - sum_{i<k} p_i)`` for
    ``k = 1 .. n-1`` and ``p_n = 1 - sum_{i<n} p_i``.
    """
    xi = np.asarray(xi, dtype=float)
    n = xi.size + 1
    if n < 2:
        raise DomainError("need at least one uniform (n >= 2)", n)
    p = np.empty(n)
    acc = 0.0
    for k in range(1, n):
        p[k - 1] = (1.0 - xi[k - 1] ** (1.0 / (n - k))) * (1.0 - acc)
        acc += p[k - 1]
    # rounding can leave -1e-17 here
    p[n - 1] = max(0.0, 1.0 - acc)
    return p


def random_simplex_probs(n: int, rng) -> np.ndarray:
    """Random probability vector of length ``n`` (draws ``n - 1`` uniforms)."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}", n)
    return simplex_probs_from_uniforms(_as_generator(rng).random(n - 1))


def hermitian_from_real(r) -> np.ndarray:
    """``D + (U^T + U) + i (L^T - L)`` for the diagonal, strictly upper and
    strictly lower parts of a real square matrix ``r``."""
    r = np.asarray(r, dtype=float)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise DimensionError(f"expected a square real matrix, got shape {r.shape}")
    d = np.diag(np.diag(r))
    upper = np.triu(r, 1)
    lower = np.tril(r, -1)
    return d + (upper.T + upper) + 1j * (lower.T - lower)


def random_hermitian(n: int, rng) -> np.ndarray:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}", n)
    return hermitian_from_real(_as_generator(rng).uniform(-1.0, 1.0, size=(n, n)))


def random_density(dA: int, dB: int, rng) -> DensityMatrix:
    """Random state ``sum_n p_n |phi_n><phi_n|`` on C^dA (x) C^dB.

    Draw order from the stream: ``dA*dB - 1`` uniforms on [0, 1) for the
    spectrum, then ``(dA*dB)**2`` uniforms on [-1, 1) row-major for the
    real matrix whose Hermitian completion supplies the eigenvectors.
    """
    n = dA * dB
    gen = _as_generator(rng)
    probs = random_simplex_probs(n, gen)
    vecs = hermitian_eig(random_hermitian(n, gen)).eigenvectors
    rho = (vecs * probs) @ vecs.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real, dA, dB)
