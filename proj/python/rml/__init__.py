"""Robust Mahalanobis metric learning from noisy triplet constraints.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its operations under stable names.
"""

from ._core import (
    generate_triplets,
    inject_noise,
    knn_error,
    learn_metric,
    mahalanobis_distance,
    project_capped_box,
    psd_project,
)

__all__ = [
    "generate_triplets",
    "inject_noise",
    "knn_error",
    "learn_metric",
    "mahalanobis_distance",
    "project_capped_box",
    "psd_project",
]
