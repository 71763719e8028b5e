"""Kernel backend selection.

The compiled Cython extension is preferred when it imported cleanly; setting
the environment variable DRONELINK_PURE=1 forces the NumPy fallback.  Both
backends expose the same functions with identical semantics.
"""

import os

import numpy as np

from ._pure import (
    KIND_CROSS_CIRCULAR,
    KIND_CROSS_LINEAR,
    KIND_HALFWAVE,
    KIND_HERTZIAN,
    KIND_ISOTROPIC,
)
from . import _pure

if os.environ.get("DRONELINK_PURE", "") not in ("", "0"):
    _impl = _pure
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pure
        BACKEND = "python"


def chi_pairs(dirs, gs_arm1, gs_arm2, gs_kind, dr_arm1, dr_arm2, dr_kind):
    return _impl.chi_pairs(
        np.ascontiguousarray(dirs, dtype=float),
        np.ascontiguousarray(gs_arm1, dtype=float),
        np.ascontiguousarray(gs_arm2, dtype=float),
        int(gs_kind),
        np.ascontiguousarray(dr_arm1, dtype=float),
        np.ascontiguousarray(dr_arm2, dtype=float),
        int(dr_kind),
    )


def mrc_capacity_batch(g, powers):
    return _impl.mrc_capacity_batch(
        np.ascontiguousarray(g, dtype=complex),
        np.ascontiguousarray(powers, dtype=float),
    )
