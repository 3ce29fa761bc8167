"""Hot numeric kernels with two interchangeable backends.

The backend is chosen once, at import time, from the ``CROOKED_BACKEND``
environment variable: ``numba`` (default when numba imports) or ``numpy``.
Both backends expose the same functions with the same results.
"""

import os
from importlib import import_module

from . import _numpy

_KERNELS = (
    "derivative_table",
    "max_row_multiplicity",
    "image_masks",
    "hyperplane_functionals",
    "triple_sum_rows",
    "subset_xor",
    "preparata_scan",
    "min_pairwise_distance",
    "bfs_distances",
    "layer_counts",
    "first_irregular",
    "common_neighbour_counts",
)


def get_backend(name):
    """Return the kernel module for ``name`` ("numba" or "numpy")."""
    if name == "numpy":
        return _numpy
    if name == "numba":
        return import_module("._numba", __name__)
    raise ValueError(f"unknown kernel backend {name!r}")


def _select():
    requested = os.environ.get("CROOKED_BACKEND", "").strip().lower()
    if requested:
        return get_backend(requested)
    try:
        return get_backend("numba")
    except ImportError:
        return _numpy


_impl = _select()
BACKEND = _impl.NAME

derivative_table = _impl.derivative_table
max_row_multiplicity = _impl.max_row_multiplicity
image_masks = _impl.image_masks
hyperplane_functionals = _impl.hyperplane_functionals
triple_sum_rows = _impl.triple_sum_rows
subset_xor = _impl.subset_xor
preparata_scan = _impl.preparata_scan
min_pairwise_distance = _impl.min_pairwise_distance
bfs_distances = _impl.bfs_distances
layer_counts = _impl.layer_counts
first_irregular = _impl.first_irregular
common_neighbour_counts = _impl.common_neighbour_counts

__all__ = ["BACKEND", "get_backend", *_KERNELS]
