"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np

# candidate rows per broadcast block; bounds the (block, n, k) temporaries
_BLOCK_ELEMS = 2_000_000


def _blocks(n_rows, n_cols):
    step = max(1, _BLOCK_ELEMS // max(1, n_cols))
    for start in range(0, n_rows, step):
        yield slice(start, min(n_rows, start + step))


def dominance_masks(P):
    P = np.ascontiguousarray(P, dtype=np.float64)
    n = P.shape[0]
    eff = np.ones(n, dtype=bool)
    weak = np.ones(n, dtype=bool)
    for sl in _blocks(n, n * max(1, P.shape[1])):
        cand = P[sl, None, :]
        others = P[None, :, :]
        lt = others < cand
        le = (others <= cand).all(axis=2)
        eff[sl] = ~(le & lt.any(axis=2)).any(axis=1)
        weak[sl] = ~lt.all(axis=2).any(axis=1)
    return eff, weak


def fdh_member(images, queries, slack):
    images = np.ascontiguousarray(images, dtype=np.float64)
    queries = np.ascontiguousarray(queries, dtype=np.float64)
    out = np.zeros(queries.shape[0], dtype=bool)
    for sl in _blocks(queries.shape[0], images.shape[0] * max(1, images.shape[1])):
        le = (images[None, :, :] <= queries[sl, None, :] + slack).all(axis=2)
        out[sl] = le.any(axis=1)
    return out
