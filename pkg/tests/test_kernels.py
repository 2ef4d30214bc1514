import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from cyclix import kernels
from cyclix._jit import NUMBA_AVAILABLE
from oracles import brute_canonical, dense_rank_mod_p

needs_numba = pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba disabled")

int_matrices = hnp.arrays(np.int64, hnp.array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=7), elements=st.integers(-50, 50))


@given(int_matrices, st.sampled_from([2, 3, 7, 101, 2**31 - 1]))
def test_rref_numpy_matches_oracle(mat, p):
    red, piv, r = kernels.rref_mod_p(mat, p, use_numba=False)
    assert r == dense_rank_mod_p(mat.tolist(), p)
    assert list(piv) == sorted(piv)
    for i, c in enumerate(piv):
        assert red[i, c] == 1


@needs_numba
@given(int_matrices, st.sampled_from([2, 5, 32003, 2**31 - 1]))
def test_rref_paths_agree(mat, p):
    a = kernels.rref_mod_p(mat, p, use_numba=False)
    b = kernels.rref_mod_p(mat, p, use_numba=True)
    assert np.array_equal(a[0], b[0]) and list(a[1]) == list(b[1]) and a[2] == b[2]


def test_rref_rejects_bad_modulus():
    with pytest.raises(ValueError):
        kernels.rref_mod_p(np.eye(2, dtype=np.int64), 2**31 + 11)


words = st.tuples(st.integers(1, 12), st.integers(1, 7)).flatmap(
    lambda shape: hnp.arrays(np.int32, shape, elements=st.integers(0, 3))
)
parities = hnp.arrays(np.int8, 4, elements=st.integers(0, 1))


@given(words, parities)
def test_min_rotations_match_brute_force(arr, par):
    shift, sign, vanish = kernels.min_rotations(arr, par, use_numba=False)
    for row, s, g, v in zip(arr.tolist(), shift, sign, vanish):
        best, bsign, bvanish = brute_canonical(row, par.tolist())
        assert bool(v) == bvanish
        assert tuple(row[s:] + row[:s]) == best
        if not bvanish:
            assert g == bsign


@needs_numba
@given(words, parities)
def test_min_rotation_paths_agree(arr, par):
    a = kernels.min_rotations(arr, par, use_numba=False)
    b = kernels.min_rotations(arr, par, use_numba=True)
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


def test_empty_batch():
    shift, sign, vanish = kernels.min_rotations(np.zeros((0, 3), np.int32), np.zeros(2, np.int8))
    assert len(shift) == len(sign) == len(vanish) == 0


def test_env_flag_disables_numba():
    code = "from cyclix._jit import USE_NUMBA; print(USE_NUMBA)"
    env = dict(os.environ, CYCLIX_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"
