import os
import subprocess
import sys

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lvmbkit._kernels import BACKEND, _pykernels

try:
    from lvmbkit._kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def matrices(max_rows=6, max_cols=6, square=False):
    def build(shape):
        r, c = shape
        return st.lists(st.lists(st.integers(-30, 30), min_size=c, max_size=c), min_size=r, max_size=r)

    if square:
        return st.integers(1, max_rows).map(lambda k: (k, k)).flatmap(build)
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(build)


def _is_row_hnf(H):
    last = -1
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            last = len(row)
            continue
        assert last < len(row), "zero rows must come last"
        p = nz[0]
        assert p > last and row[p] > 0
        last = p
    pivots = [(i, next(j for j, x in enumerate(r) if x)) for i, r in enumerate(H) if any(r)]
    for i, p in pivots:
        for k in range(i):
            assert 0 <= H[k][p] < H[i][p]
    return True


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_python_rank_matches_sympy(M):
    assert _pykernels.int_rank(M) == sympy.Matrix(M).rank()


@settings(max_examples=200, deadline=None)
@given(matrices(square=True))
def test_python_det_matches_sympy(M):
    assert _pykernels.int_det(M) == sympy.Matrix(M).det()


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_python_hnf_properties(M):
    H, U = _pykernels.int_hnf(M)
    assert sympy.Matrix(U) * sympy.Matrix(M) == sympy.Matrix(H)
    assert abs(sympy.Matrix(U).det()) == 1
    assert _is_row_hnf(H)


@needs_ext
@settings(max_examples=300, deadline=None)
@given(matrices(8, 8))
def test_compiled_matches_python(M):
    assert _ckernels.int_rank(M) == _pykernels.int_rank(M)
    assert _ckernels.int_hnf(M) == _pykernels.int_hnf(M)
    if len(M) == len(M[0]):
        assert _ckernels.int_det(M) == _pykernels.int_det(M)


@needs_ext
def test_compiled_handles_big_integers():
    M = [[10**40 + 1, 3], [7, 10**35]]
    assert _ckernels.int_det(M) == _pykernels.int_det(M) == (10**40 + 1) * 10**35 - 21
    assert _ckernels.int_hnf(M) == _pykernels.int_hnf(M)


def test_backend_selection_env():
    code = "import lvmbkit; print(lvmbkit.BACKEND)"
    env = dict(os.environ, LVMBKIT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert BACKEND in ("cython", "python")
