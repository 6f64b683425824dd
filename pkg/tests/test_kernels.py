"""Backend equivalence: the compiled kernels and the NumPy fallback must
agree (bit-for-bit for Sobol' generation, to rounding for the L2 sum)."""
import numpy as np
import pytest

from qmclab import _kernels_py, load_direction_table
from qmclab._backend import BACKEND
from qmclab.sobol import SobolEngine

try:
    from qmclab import _kernels_c
except ImportError:
    _kernels_c = None

needs_compiled = pytest.mark.skipif(_kernels_c is None,
                                    reason="compiled kernels unavailable")


def test_a_backend_is_active():
    assert BACKEND in ("cython", "python")


@needs_compiled
@pytest.mark.parametrize("start", [0, 1, 999, 2 ** 16])
def test_sobol_fill_bit_identical(start):
    table = load_direction_table()
    n = 8
    v = np.ascontiguousarray(table.directions(n))
    eng = SobolEngine(table, n)
    eng.seek(start)
    state_c = eng._state.copy()
    state_py = eng._state.copy()
    out_c = np.empty((517, n))
    out_py = np.empty((517, n))
    _kernels_c.sobol_fill(v, state_c, start, out_c)
    _kernels_py.sobol_fill(v, state_py, start, out_py)
    assert np.array_equal(out_c, out_py)
    assert np.array_equal(state_c, state_py)


@needs_compiled
@pytest.mark.parametrize("count,n", [(1, 1), (16, 2), (100, 5), (2000, 3)])
def test_l2_sum_agrees(count, n):
    x = np.random.default_rng(count * n).random((count, n))
    a = _kernels_c.l2_star_sq(x)
    b = _kernels_py.l2_star_sq(x)
    assert a == pytest.approx(b, rel=1e-11, abs=1e-18)


def test_python_fallback_via_env(tmp_path):
    import subprocess
    import sys
    code = ("import os; os.environ['QMCLAB_PURE_PYTHON']='1'; "
            "import qmclab; print(qmclab.kernel_backend())")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "python"
