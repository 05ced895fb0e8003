"""Kernel selection: compiled extension if importable, numpy otherwise.

Set ``WEAKEFF_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if os.environ.get("WEAKEFF_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"


# row deduplication pays off only for the broadcast fallback
_DEDUP_MIN_ROWS = 32


def _c64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def dominance_masks(P):
    """(efficient, weakly_efficient) boolean masks over the rows of P."""
    P = _c64(P)
    if P.shape[0] == 0:
        return np.zeros(0, dtype=bool), np.zeros(0, dtype=bool)
    if BACKEND == "python" and P.shape[0] >= _DEDUP_MIN_ROWS:
        # both masks depend on a row's value only, so ties collapse to one kernel row
        U, inverse = np.unique(P, axis=0, return_inverse=True)
        if U.shape[0] < P.shape[0]:
            eff, weak = kernels.dominance_masks(_c64(U))
            inverse = inverse.ravel()
            return np.asarray(eff, dtype=bool)[inverse], np.asarray(weak, dtype=bool)[inverse]
    return kernels.dominance_masks(P)


def fdh_member(images, queries, slack=0.0):
    images, queries = _c64(images), _c64(queries)
    if images.shape[0] == 0:
        return np.zeros(queries.shape[0], dtype=bool)
    return kernels.fdh_member(images, queries, float(slack))
