"""Pure numpy/scipy versions of the hot lattice kernels."""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm


def ordered_expm_product(gens):
    """``exp(G[M-1]) ... exp(G[1]) exp(G[0])`` for a stack of real N x N generators."""
    gens = np.ascontiguousarray(gens, dtype=np.float64)
    if gens.ndim != 3 or gens.shape[1] != gens.shape[2]:
        raise ValueError("expected an (M, N, N) stack of square matrices")
    M, N, _ = gens.shape
    if M == 0:
        return np.eye(N)
    mats = expm(gens)
    # pairwise reduction keeps later cells on the left
    while mats.shape[0] > 1:
        if mats.shape[0] % 2:
            mats = np.concatenate([mats, np.eye(N)[None]], axis=0)
        mats = np.matmul(mats[1::2], mats[0::2])
    return mats[0]


def ordered_pair_sum(values, weights):
    """``sum_{i>j} w_i w_j X_i X_j + 1/2 sum_i w_i^2 X_i X_i``.

    Quadrature of the ordered double integral over ``x_1 > x_2`` with the
    later point on the left.
    """
    X = np.asarray(values, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    if X.ndim != 3 or X.shape[0] != w.shape[0]:
        raise ValueError("values and weights must agree on the lattice size")
    wX = X * w[:, None, None]
    before = np.cumsum(wX, axis=0) - wX
    return np.einsum("iab,ibc->ac", wX, before) + 0.5 * np.einsum("iab,ibc->ac", wX, wX)
