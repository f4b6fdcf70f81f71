"""Lower bounds on the entropic uncertainty of projective measurements.

Two-measurement bounds take a pair of bases; the multi-measurement
bounds (LMF, SCB, OSCB) take a :class:`MeasurementSet`. All values are in
bits and are returned unclipped, so a bound may be negative.
"""

import math
from dataclasses import asdict, dataclass
from typing import Literal

from . import entropy
from .errors import DomainError
from .measurements import MeasurementSet, f_overlap, f_overlap_optimal, max_overlap
from .states import DensityMatrix


def mu_bound(c: float) -> float:
    """State-independent two-measurement bound ``-log2 c``."""
    if not c > 0:
        raise DomainError(f"overlap must be positive, got {c!r}", c)
    return -math.log2(c)


def deutsch_bound(c: float) -> float:
    """Older two-measurement bound ``2 log2(2 / (1 + sqrt c))``; never exceeds :func:`mu_bound`."""
    if not 0 < c <= 1:
        raise DomainError(f"overlap must lie in (0, 1], got {c!r}", c)
    return 2 * math.log2(2 / (1 + math.sqrt(c)))


def berta_bound(rho_ab: DensityMatrix, b1, b2) -> float:
    """Memory-assisted bound ``-log2 c + S(A|B)`` for two measurements."""
    return mu_bound(max_overlap(b1, b2)) + entropy.conditional_entropy(rho_ab)


def adabi_bound(rho_ab: DensityMatrix, b1, b2) -> float:
    """Berta bound plus ``max(0, I(A:B) - I(M1:B) - I(M2:B))``."""
    delta = entropy.mutual_information(rho_ab) - (
        entropy.holevo(rho_ab, b1) + entropy.holevo(rho_ab, b2)
    )
    return berta_bound(rho_ab, b1, b2) + max(0.0, delta)


def lmf_bound(rho_ab: DensityMatrix, ms: MeasurementSet, order=None) -> float:
    """``-log2 f + (N - 1) S(A|B)`` with ``f`` the chained overlap in ``order``."""
    n = len(ms)
    return -math.log2(f_overlap(ms, order)) + (n - 1) * entropy.conditional_entropy(rho_ab)


def _overlap_term(ms: MeasurementSet) -> float:
    # -(1/(N-1)) log2 prod c_i, summed in log space
    return -sum(math.log2(c) for c in ms.c_list()) / (len(ms) - 1)


def scb_bound(rho_ab: DensityMatrix, ms: MeasurementSet) -> float:
    """Simply constructed bound ``-(1/(N-1)) log2 prod c_i + (N/2) S(A|B)``."""
    return _overlap_term(ms) + len(ms) / 2 * entropy.conditional_entropy(rho_ab)


def delta_m(rho_ab: DensityMatrix, ms: MeasurementSet) -> float:
    """Correlation surplus ``(N/2) I(A:B) - sum_m I(M_m:B)``."""
    holevos = sum(entropy.holevo(rho_ab, b) for b in ms.bases)
    return len(ms) / 2 * entropy.mutual_information(rho_ab) - holevos


def oscb_bound(rho_ab: DensityMatrix, ms: MeasurementSet) -> float:
    """SCB raised by ``max(0, delta_m)``."""
    return scb_bound(rho_ab, ms) + max(0.0, delta_m(rho_ab, ms))


def mub_gap(d: int, cond_ab: float, n: int) -> float:
    """SCB minus LMF for N pairwise mutually unbiased bases in dimension d."""
    if n < 2 or d < 2:
        raise DomainError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    return (n / 2 - 1) * (math.log2(d) - cond_ab)


@dataclass(frozen=True)
class BoundReport:
    U: float
    lmf: float
    scb: float
    oscb: float
    f: float
    c_list: tuple
    cond_ab: float
    mutual: float
    holevo_list: tuple
    delta_m: float
    order_used: tuple
    lmf_negative: bool
    mub: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("c_list", "holevo_list", "order_used"):
            d[key] = list(d[key])
        return d

    def violations(self, tol=1e-9) -> list:
        """Links of ``U >= oscb >= scb >= lmf`` that fail by more than ``tol``."""
        chain = [("U", self.U), ("oscb", self.oscb), ("scb", self.scb), ("lmf", self.lmf)]
        return [
            (hi, lo, b - a)
            for (hi, a), (lo, b) in zip(chain, chain[1:])
            if b - a > tol
        ]


def evaluate_all(
    rho_ab: DensityMatrix,
    ms: MeasurementSet,
    order_mode: Literal["given", "optimal"] = "given",
) -> BoundReport:
    """Every uncertainty quantity for one state and one measurement set.

    With ``order_mode="optimal"`` the LMF bound uses the measurement order
    that minimizes ``f`` (tightest LMF); ``order_used`` records it.
    """
    n = len(ms)
    if order_mode == "given":
        order = tuple(range(n))
        f = f_overlap(ms, order)
    elif order_mode == "optimal":
        f, order = f_overlap_optimal(ms)
    else:
        raise DomainError(f"order_mode must be 'given' or 'optimal', got {order_mode!r}")

    cond = entropy.conditional_entropy(rho_ab)
    mutual = entropy.mutual_information(rho_ab)
    u = sum(entropy.measured_conditional(rho_ab, b) for b in ms.bases)
    holevos = tuple(entropy.holevo(rho_ab, b) for b in ms.bases)
    dm = n / 2 * mutual - sum(holevos)
    lmf = -math.log2(f) + (n - 1) * cond
    scb = _overlap_term(ms) + n / 2 * cond
    return BoundReport(
        U=u,
        lmf=lmf,
        scb=scb,
        oscb=scb + max(0.0, dm),
        f=f,
        c_list=tuple(ms.c_list()),
        cond_ab=cond,
        mutual=mutual,
        holevo_list=holevos,
        delta_m=dm,
        order_used=tuple(int(i) for i in order),
        lmf_negative=lmf < 0,
        mub=ms.is_pairwise_mub(),
    )
