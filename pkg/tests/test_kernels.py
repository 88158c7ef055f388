import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundary_lax.monodromy import _kernels_py, kernels
from scipy.linalg import expm

try:
    from boundary_lax.monodromy import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None

BACKENDS = [_kernels_py] + ([compiled] if compiled else [])


def _reference_product(gens):
    out = np.eye(gens.shape[1])
    for g in gens:
        out = expm(g) @ out
    return out


def _reference_pairs(vals, w):
    n = len(w)
    acc = np.zeros(vals.shape[1:])
    for i in range(n):
        for j in range(i):
            acc += w[i] * w[j] * vals[i] @ vals[j]
        acc += 0.5 * w[i] ** 2 * vals[i] @ vals[i]
    return acc


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(st.integers(1, 40), st.integers(2, 3), st.integers(0, 10**6), st.floats(0.01, 2.0))
def test_product_matches_reference(mod, n, N, seed, scale):
    g = np.random.default_rng(seed).normal(scale=scale, size=(n, N, N))
    assert np.allclose(mod.ordered_expm_product(g), _reference_product(g), rtol=1e-11, atol=1e-12)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(st.integers(1, 30), st.integers(0, 10**6))
def test_pair_sum_matches_reference(mod, n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(n, 2, 2))
    w = rng.uniform(0.1, 1.0, size=n)
    assert np.allclose(mod.ordered_pair_sum(v, w), _reference_pairs(v, w), rtol=1e-12, atol=1e-12)


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
def test_compiled_is_default():
    assert kernels.BACKEND == "cython"


def test_fallback_forced_by_environment():
    env = {**os.environ, "BOUNDARY_LAX_PURE_PYTHON": "1"}
    out = subprocess.run(
        [sys.executable, "-c", "from boundary_lax.monodromy import kernels; print(kernels.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_empty_product_is_identity():
    for mod in BACKENDS:
        assert np.array_equal(mod.ordered_expm_product(np.zeros((0, 2, 2))), np.eye(2))
