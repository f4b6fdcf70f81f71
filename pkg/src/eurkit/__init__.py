"""Entropic uncertainty relations for multiple measurements with quantum memory."""

__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    BoundReport,
    adabi_bound,
    berta_bound,
    delta_m,
    deutsch_bound,
    evaluate_all,
    lmf_bound,
    mu_bound,
    mub_gap,
    oscb_bound,
    scb_bound,
)
from .entropy import (  # noqa: E402
    conditional_entropy,
    holevo,
    measured_conditional,
    mutual_information,
    post_measurement_state,
    shannon,
    uncertainty_sum,
    von_neumann,
)
from .measurements import (  # noqa: E402
    MeasurementSet,
    ProjectiveBasis,
    f_overlap,
    is_mub,
    max_overlap,
    overlap_matrix,
    pauli_bases,
    qutrit_mub,
)
from .states import (  # noqa: E402
    DensityMatrix,
    RngStream,
    bell_diagonal,
    bell_diagonal_family,
    random_density,
    werner,
)
