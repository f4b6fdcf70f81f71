"""Deterministic sweeps and random ensembles with CSV output.

Sweeps evaluate the three Pauli measurements on a one-parameter state
family over an evenly spaced purity grid. Ensembles draw sample ``k``
from stream ``k`` of the master seed, so rows never depend on how the
work was split across processes.
"""

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .bounds import evaluate_all
from .measurements import builtin_bases, pauli_bases
from .serialize import format_float
from .states import PRNG_ALGORITHM, RngStream, bell_diagonal_family, random_density, werner

DEFAULT_GRID = 201
DEFAULT_SAMPLES = {2: 10_000, 3: 1_000}
TOL_ORDER = 1e-9

SWEEP_HEADER = "p,U,LMF,SCB,OSCB"
ENSEMBLE_HEADER = "idx,S_cond,U,LMF,SCB,OSCB,delta_m"


@dataclass(frozen=True)
class SweepRecord:
    p: float
    U: float
    lmf: float
    scb: float
    oscb: float
    cond_ab: float
    delta_m: float

    @property
    def key(self):
        return self.p

    def csv_row(self) -> str:
        return ",".join(format_float(v) for v in (self.p, self.U, self.lmf, self.scb, self.oscb))


@dataclass(frozen=True)
class EnsembleRecord:
    sample_index: int
    cond_ab: float
    U: float
    lmf: float
    scb: float
    oscb: float
    delta_m: float

    @property
    def key(self):
        return self.sample_index

    def csv_row(self) -> str:
        vals = (self.cond_ab, self.U, self.lmf, self.scb, self.oscb, self.delta_m)
        return str(self.sample_index) + "," + ",".join(format_float(v) for v in vals)


@dataclass(frozen=True)
class Violation:
    key: object
    relation: str
    margin: float


def _grid(grid: int):
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    return [k / (grid - 1) for k in range(grid)]


def _sweep(family, grid):
    ms = pauli_bases()
    out = []
    for p in _grid(grid):
        r = evaluate_all(family(p), ms)
        out.append(SweepRecord(p, r.U, r.lmf, r.scb, r.oscb, r.cond_ab, r.delta_m))
    return out


def werner_sweep(grid: int = DEFAULT_GRID) -> list:
    """Pauli-measurement bounds on Werner states at ``p = k / (grid - 1)``."""
    return _sweep(werner, grid)


def bell_diagonal_sweep(grid: int = DEFAULT_GRID) -> list:
    """Pauli-measurement bounds on the Bell-diagonal family ``r = (1-2p, -p, -p)``."""
    return _sweep(bell_diagonal_family, grid)


def ensemble_sample(dim: int, master_seed: int, index: int) -> EnsembleRecord:
    rho = random_density(dim, dim, RngStream(master_seed, index))
    r = evaluate_all(rho, builtin_bases(dim))
    return EnsembleRecord(index, r.cond_ab, r.U, r.lmf, r.scb, r.oscb, r.delta_m)


def _ensemble_chunk(args):
    dim, master_seed, start, stop = args
    return [ensemble_sample(dim, master_seed, k) for k in range(start, stop)]


def random_ensemble(dim: int, samples: int, master_seed: int, workers: int = 1) -> list:
    """Random two-qubit (``dim=2``, Pauli bases) or two-qutrit (``dim=3``,
    qutrit MUB) states with their bounds, sorted by sample index.

    ``workers > 1`` spreads contiguous index chunks over a process pool;
    the output is identical for every worker count.
    """
    if dim not in (2, 3):
        raise ValueError(f"dim must be 2 or 3, got {dim}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if workers <= 1 or samples < 2:
        return _ensemble_chunk((dim, master_seed, 0, samples))
    n_chunks = min(samples, workers * 4)
    bounds = [samples * i // n_chunks for i in range(n_chunks + 1)]
    jobs = [(dim, master_seed, a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunks = list(pool.map(_ensemble_chunk, jobs))
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda r: r.sample_index)
    return records


def violation_scan(records, tol: float = TOL_ORDER) -> list:
    """Every broken link of ``U >= OSCB >= SCB >= LMF`` beyond ``tol``.

    Each violation carries the row key (``p`` or sample index), the
    relation and the margin by which it fails.
    """
    found = []
    for rec in records:
        chain = (("U", rec.U), ("OSCB", rec.oscb), ("SCB", rec.scb), ("LMF", rec.lmf))
        for (hi_name, hi), (lo_name, lo) in zip(chain, chain[1:]):
            if lo - hi > tol:
                found.append(Violation(rec.key, f"{hi_name}>={lo_name}", lo - hi))
    return found


def metadata_line(experiment: str, labels, seed=None, **params) -> str:
    fields = [f"eurkit={__version__}", f"experiment={experiment}"]
    fields += [f"{k}={v}" for k, v in params.items()]
    fields.append(f"seed={'none' if seed is None else seed}")
    fields.append(f"prng={PRNG_ALGORITHM if seed is not None else 'none'}")
    fields.append("measurements=" + "|".join(labels))
    return "# " + " ".join(fields)


def write_csv(records, header: str, meta: str, fh) -> None:
    fh.write(meta + "\n")
    fh.write(header + "\n")
    for rec in records:
        fh.write(rec.csv_row() + "\n")


def sweep_csv(records, experiment: str, grid: int) -> str:
    buf = io.StringIO()
    meta = metadata_line(experiment, pauli_bases().labels, grid=grid)
    write_csv(records, SWEEP_HEADER, meta, buf)
    return buf.getvalue()


def ensemble_csv(records, dim: int, samples: int, master_seed: int) -> str:
    buf = io.StringIO()
    meta = metadata_line(
        "random", builtin_bases(dim).labels, seed=master_seed, dim=dim, samples=samples
    )
    write_csv(records, ENSEMBLE_HEADER, meta, buf)
    return buf.getvalue()
