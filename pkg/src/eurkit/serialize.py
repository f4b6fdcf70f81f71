"""JSON formats for states, bases and bound reports.

State:  ``{"dims": [dA, dB], "re": [[...]], "im": [[...]]}``, row-major.
Basis:  ``{"dim": d, "label": "...", "vectors_re": [[...]], "vectors_im": [[...]]}``,
        one basis vector per row.
A bases file holds a JSON list of basis objects (or ``{"bases": [...]}``).
Floats are written with 17 significant digits.
"""

import json
import math
from pathlib import Path

import numpy as np

from .bounds import BoundReport
from .errors import EurkitError, InvariantError
from .measurements import MeasurementSet, ProjectiveBasis
from .states import DensityMatrix

TOL_PARSE = 1e-8


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def dumps(obj, indent=None, _level=0) -> str:
    """JSON text with every float written at 17 significant digits."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ", " if indent is None else ","
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        # numeric rows stay on one line
        inner = indent if any(isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj) else None
        if inner is None:
            return "[" + ", ".join(dumps(v, None) for v in obj) + "]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[" + sep.join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _real_grid(doc, key, shape, source):
    if key not in doc:
        raise InvariantError("schema", f"missing key {key!r}", source)
    try:
        arr = np.asarray(doc[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvariantError("schema", f"{key!r} is not a numeric matrix ({exc})", source) from None
    if arr.ndim != 2 or (shape is not None and arr.shape != shape):
        want = "square" if shape is None else f"{shape[0]}x{shape[1]}"
        raise InvariantError("square", f"{key!r} has shape {arr.shape}, expected {want}", source, key)
    if arr.shape[0] != arr.shape[1]:
        raise InvariantError("square", f"{key!r} has shape {arr.shape}", source, key)
    if not np.all(np.isfinite(arr)):
        raise InvariantError("finite", f"{key!r} contains non-finite entries", source, key)
    return arr


def state_to_json(rho: DensityMatrix) -> dict:
    return {
        "dims": [rho.dA, rho.dB],
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }


def state_from_json(doc, source=None) -> DensityMatrix:
    """Parse and validate a state document.

    Rejects non-square matrices, Hermiticity defects above 1e-8 and
    trace deviations above 1e-8. Accepted input is symmetrized and
    renormalized before the stricter :class:`DensityMatrix` checks.
    """
    if not isinstance(doc, dict):
        raise InvariantError("schema", "state document must be a JSON object", source)
    dims = doc.get("dims")
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)
    ):
        raise InvariantError("schema", f"'dims' must be two positive integers, got {dims!r}", source, "dims")
    re = _real_grid(doc, "re", None, source)
    im = _real_grid(doc, "im", re.shape, source)
    m = re + 1j * im
    n = dims[0] * dims[1]
    if m.shape[0] != n:
        raise InvariantError(
            "dimension", f"matrix is {m.shape[0]}x{m.shape[0]} but dims {dims} need {n}x{n}", source, "dims"
        )
    herm = np.abs(m - m.conj().T)
    if herm.max() > TOL_PARSE:
        i, j = np.unravel_index(np.argmax(herm), herm.shape)
        raise InvariantError("hermitian", f"|rho - rho^dagger| = {herm[i, j]:.3e}", source, f"entry ({i}, {j})")
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > TOL_PARSE:
        raise InvariantError("unit-trace", f"trace = {tr!r}", source)
    m = 0.5 * (m + m.conj().T)
    try:
        return DensityMatrix(m / np.trace(m).real, dims[0], dims[1])
    except EurkitError as exc:
        raise InvariantError("positive-semidefinite", str(exc), source) from None


def basis_to_json(basis: ProjectiveBasis) -> dict:
    rows = basis.vectors.T
    return {
        "dim": basis.dim,
        "label": basis.label,
        "vectors_re": rows.real.tolist(),
        "vectors_im": rows.imag.tolist(),
    }


def basis_from_json(doc, source=None, location=None) -> ProjectiveBasis:
    if not isinstance(doc, dict):
        raise InvariantError("schema", "basis must be a JSON object", source, location)
    d = doc.get("dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InvariantError("schema", f"'dim' must be a positive integer, got {d!r}", source, location)
    try:
        re = _real_grid(doc, "vectors_re", (d, d), source)
        im = _real_grid(doc, "vectors_im", (d, d), source)
    except InvariantError as exc:
        raise InvariantError(exc.invariant, exc.detail, source, location) from None
    rows = re + 1j * im
    gram = rows.conj() @ rows.T
    err = float(np.max(np.abs(gram - np.eye(d))))
    if err > TOL_PARSE:
        raise InvariantError("orthonormal", f"max |<u_i|u_j> - delta_ij| = {err:.3e}", source, location)
    return ProjectiveBasis.from_rows(rows, str(doc.get("label", "")), tol=TOL_PARSE)


def bases_to_json(ms: MeasurementSet) -> list:
    return [basis_to_json(b) for b in ms.bases]


def bases_from_json(doc, source=None) -> MeasurementSet:
    if isinstance(doc, dict) and "bases" in doc:
        doc = doc["bases"]
    if not isinstance(doc, list):
        raise InvariantError("schema", "expected a list of basis objects", source)
    bases = [basis_from_json(b, source, f"basis {i}") for i, b in enumerate(doc)]
    try:
        return MeasurementSet(tuple(bases))
    except EurkitError as exc:
        raise InvariantError("measurement-set", str(exc), source) from None


def _load(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvariantError("readable", exc.strerror or str(exc), str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvariantError(
            "json-syntax", exc.msg, str(path), f"line {exc.lineno} column {exc.colno}"
        ) from None


def load_state(path) -> DensityMatrix:
    return state_from_json(_load(path), str(path))


def load_bases(path) -> MeasurementSet:
    return bases_from_json(_load(path), str(path))


def report_to_json(report: BoundReport, **extra) -> str:
    d = report.to_dict()
    d.update(extra)
    return dumps(d, indent=2)
