"""Well-posedness diagnostics for finite-dimensional vector optimization."""

from ._core import (
    Error,
    OrderingCone,
    __version__,
    classify,
    dh_check,
    oriented_distance,
    registry_labels,
    replicate,
    run,
    tykhonov_check,
)

__all__ = [
    "Error",
    "OrderingCone",
    "__version__",
    "classify",
    "dh_check",
    "oriented_distance",
    "registry_labels",
    "replicate",
    "run",
    "tykhonov_check",
]
