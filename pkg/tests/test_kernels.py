import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfalg import _kernels

P = [2, 3, 13, 65521, 2**31 - 1]

needs_numba = pytest.mark.skipif(_kernels.numba is None, reason="numba not importable")


def arrays(max_side=7):
    return st.tuples(st.integers(1, max_side), st.integers(1, max_side), st.sampled_from(P), st.integers(0, 2**32))


def _rand(shape, p, seed):
    return np.random.default_rng(seed).integers(0, p, size=shape, dtype=np.int64)


@needs_numba
@given(arrays())
def test_rref_backends_agree(case):
    r, c, p, seed = case
    a = _rand((r, c), p, seed)
    x = _kernels.rref_modp_numba(a, p)
    y = _kernels.rref_modp_numpy(a, p)
    assert x[1] == y[1]
    assert np.array_equal(x[0], y[0]) and list(x[2][: x[1]]) == list(y[2][: y[1]])


@needs_numba
@given(arrays())
def test_matmul_backends_agree(case):
    r, c, p, seed = case
    a, b = _rand((r, c), p, seed), _rand((c, r), p, seed + 1)
    expected = (a.astype(object) @ b.astype(object)) % p
    assert np.array_equal(_kernels.matmul_modp_numba(a, b, p), expected.astype(np.int64))
    assert np.array_equal(_kernels.matmul_modp_numpy(a, b, p), expected.astype(np.int64))


@needs_numba
@given(st.integers(1, 6), st.sampled_from(P), st.integers(0, 2**32))
def test_det_backends_agree(n, p, seed):
    mats = _rand((12, n, n), p, seed)
    assert np.array_equal(_kernels.batch_det_modp_numba(mats, p), _kernels.batch_det_modp_numpy(mats, p))


def test_det_known_values():
    m = np.array([[[2, 1], [1, 1]], [[1, 2], [2, 4]], [[0, 1], [1, 0]]], dtype=np.int64)
    assert _kernels.batch_det_modp(m, 7).tolist() == [1, 0, 6]


def test_env_flag_selects_numpy():
    env = dict(os.environ, QFALG_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from qfalg import _kernels; print(_kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_numpy_backend_runs_a_real_computation():
    code = ("from qfalg.zoo import quantum_plane_quotient; from qfalg.exactla import GF, Rng;"
            "from qfalg.frobenius import pic_order_probe, frobenius_witness;"
            "A = quantum_plane_quotient(GF(13), 3);"
            "print(pic_order_probe(A, 4, Rng(0), 8, frobenius_witness(A, A.basis_vector('xy'))).order)")
    env = dict(os.environ, QFALG_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "3"
