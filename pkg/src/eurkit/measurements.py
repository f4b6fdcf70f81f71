"""Projective measurements, mutually unbiased bases and overlap statistics."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError, MubVerificationError

TOL_ORTHO = 1e-10
TOL_STOCHASTIC = 1e-10
MAX_PERMUTE = 6


@dataclass(frozen=True, eq=False)
class ProjectiveBasis:
    """Orthonormal basis of C^d; ``vectors[:, j]`` is the j-th basis vector."""

    vectors: np.ndarray
    label: str = ""
    tol: float = field(default=TOL_ORTHO, repr=False)

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise DimensionError(f"basis needs d vectors of length d, got shape {v.shape}")
        gram = v.conj().T @ v
        err = float(np.max(np.abs(gram - np.eye(v.shape[0]))))
        if err > self.tol:
            raise DomainError(f"basis {self.label!r} is not orthonormal (deviation {err:.3e})", err)
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)

    @classmethod
    def from_rows(cls, rows, label="", tol=TOL_ORTHO):
        """Build from a sequence of basis vectors, one per row."""
        return cls(np.asarray(rows, dtype=complex).T, label, tol)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def projectors(self) -> np.ndarray:
        """Array of shape (d, d, d); ``[j]`` is ``|u_j><u_j|``."""
        v = self.vectors
        return np.einsum("ij,kj->jik", v, v.conj())


def overlap_matrix(b1: ProjectiveBasis, b2: ProjectiveBasis) -> np.ndarray:
    """``C[j, k] = |<u_j|v_k>|^2``; doubly stochastic for orthonormal inputs."""
    if b1.dim != b2.dim:
        raise DimensionError(f"basis dimensions differ: {b1.dim} vs {b2.dim}")
    return np.abs(b1.vectors.conj().T @ b2.vectors) ** 2


def max_overlap(b1: ProjectiveBasis, b2: ProjectiveBasis) -> float:
    return float(overlap_matrix(b1, b2).max())


def is_mub(b1: ProjectiveBasis, b2: ProjectiveBasis, tol: float = 1e-10) -> bool:
    c = overlap_matrix(b1, b2)
    return bool(np.all(np.abs(c - 1.0 / b1.dim) <= tol))


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """Ordered tuple of N >= 2 bases of one dimension with cached overlaps.

    ``overlaps[(m, n)]`` holds ``overlap_matrix(bases[m], bases[n])`` for
    every ordered pair ``m != n``. Construction fails if any of them is
    not doubly stochastic.
    """

    bases: tuple
    overlaps: dict = field(init=False, repr=False)

    def __post_init__(self):
        bases = tuple(self.bases)
        if len(bases) < 2:
            raise DomainError(f"a measurement set needs at least 2 bases, got {len(bases)}")
        dims = {b.dim for b in bases}
        if len(dims) != 1:
            raise DimensionError(f"bases have mixed dimensions {sorted(dims)}")
        cache = {}
        for m, n in itertools.permutations(range(len(bases)), 2):
            c = overlap_matrix(bases[m], bases[n])
            dev = max(
                np.max(np.abs(c.sum(axis=0) - 1.0)),
                np.max(np.abs(c.sum(axis=1) - 1.0)),
            )
            if dev > TOL_STOCHASTIC:
                raise DomainError(
                    f"overlap matrix of bases {m} and {n} is not doubly stochastic "
                    f"(deviation {dev:.3e})",
                    dev,
                )
            c.flags.writeable = False
            cache[(m, n)] = c
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "overlaps", cache)

    def __len__(self):
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)

    @property
    def dim(self) -> int:
        return self.bases[0].dim

    @property
    def labels(self) -> list:
        return [b.label for b in self.bases]

    def pairs(self):
        """Unordered index pairs ``(m, n)``, ``m < n``, in lexicographic order."""
        return list(itertools.combinations(range(len(self.bases)), 2))

    def c_list(self) -> list:
        """Maximal overlap of every unordered basis pair, lexicographic order."""
        return [float(self.overlaps[pair].max()) for pair in self.pairs()]

    def is_pairwise_mub(self, tol=1e-10) -> bool:
        d = self.dim
        return all(np.all(np.abs(self.overlaps[pair] - 1.0 / d) <= tol) for pair in self.pairs())


def _chain(ms: MeasurementSet, order) -> float:
    v = ms.overlaps[(order[0], order[1])].max(axis=0)
    for a, b in zip(order[1:-1], order[2:]):
        v = v @ ms.overlaps[(a, b)]
    return float(v.max())


def f_overlap(ms: MeasurementSet, order=None) -> float:
    """Chained overlap of a measurement sequence.

    Starting from ``v_j = max_i C12[i, j]`` the vector is pushed through
    ``C23, ..., C(N-1)N`` by summing over each intermediate index, and the
    largest final entry is returned. The value lies in [1/d, 1] and, for
    non-MUB sets, depends on ``order`` (default: the set's own order).
    """
    if order is None:
        order = tuple(range(len(ms)))
    order = tuple(order)
    if sorted(order) != list(range(len(ms))):
        raise DomainError(f"order {order} is not a permutation of 0..{len(ms) - 1}")
    return _chain(ms, order)


def f_overlap_optimal(ms: MeasurementSet):
    """Smallest chained overlap over all orderings (N <= 6); returns ``(f, order)``.

    Reversing a sequence does not change ``f`` in general, so every
    permutation is tried. Ties keep the lexicographically first order.
    """
    n = len(ms)
    if n > MAX_PERMUTE:
        raise DomainError(f"exhaustive ordering supports N <= {MAX_PERMUTE}, got {n}", n)
    best = None
    for order in itertools.permutations(range(n)):
        f = _chain(ms, order)
        if best is None or f < best[0]:
            best = (f, order)
    return best


def pauli_bases() -> MeasurementSet:
    """Eigenbases of sigma_x, sigma_y, sigma_z (in that order), +1 eigenvector first."""
    s = 1 / np.sqrt(2)
    x = ProjectiveBasis.from_rows([[s, s], [s, -s]], "sigma_x")
    y = ProjectiveBasis.from_rows([[s, 1j * s], [s, -1j * s]], "sigma_y")
    z = ProjectiveBasis.from_rows([[1, 0], [0, 1]], "sigma_z")
    return MeasurementSet((x, y, z))


def qutrit_mub(tol=1e-10) -> MeasurementSet:
    """The three qutrit bases alpha, beta, gamma built from eps = exp(2 pi i / 3).

    Raises ``MubVerificationError`` if any cross overlap differs from 1/3
    by more than ``tol``.
    """
    e = np.exp(2j * np.pi / 3)
    ec = e.conjugate()
    r = 1 / np.sqrt(3)
    alpha = [[1, 1, 1], [1, ec, e], [1, e, ec]]
    beta = [[1, 1, ec], [1, e, e], [1, ec, 1]]
    gamma = [[1, 1, e], [1, ec, ec], [1, e, 1]]
    bases = tuple(
        ProjectiveBasis.from_rows(r * np.asarray(rows, dtype=complex), label)
        for rows, label in ((alpha, "alpha"), (beta, "beta"), (gamma, "gamma"))
    )
    for b1, b2 in itertools.combinations(bases, 2):
        dev = float(np.max(np.abs(overlap_matrix(b1, b2) - 1 / 3)))
        if dev > tol:
            raise MubVerificationError(
                f"bases {b1.label} and {b2.label} are not mutually unbiased (deviation {dev:.3e})"
            )
    return MeasurementSet(bases)


def builtin_bases(dim: int) -> MeasurementSet:
    if dim == 2:
        return pauli_bases()
    if dim == 3:
        return qutrit_mub()
    raise DomainError(f"no built-in measurement set for dimension {dim}", dim)
