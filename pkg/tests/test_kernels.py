import os
import subprocess
import sys

import pytest

from twoplectic import _pykernels, polyring


def _kernel_in_subprocess(env_extra):
    env = dict(os.environ, **env_extra)
    out = subprocess.run(
        [sys.executable, "-c", "import twoplectic.polyring as p; print(p.KERNEL)"],
        capture_output=True, text=True, env=env, check=True,
    )
    return out.stdout.strip()


def test_pure_python_fallback_selected_by_env():
    assert _kernel_in_subprocess({"TWOPLECTIC_PURE_PYTHON": "1"}) == "python"


def test_default_kernel_is_compiled_when_built():
    try:
        from twoplectic import _ckernels  # noqa: F401
    except ImportError:
        pytest.skip("compiled extension not built")
    assert _kernel_in_subprocess({}) == "cython-gmp"


def test_wide_rings_delegate_to_python():
    # 6 variables x 12 bits exceeds one machine word; must still be exact
    a = polyring.Polynomial(6, {(1, 0, 0, 0, 0, 5): 3, (0, 2, 0, 0, 0, 0): -1})
    b = polyring.Polynomial(6, {(0, 0, 0, 0, 7, 1): 2})
    assert (a * b)._terms == _pykernels.mul(a._terms, b._terms, 6)
    assert (a * b).coefficient((1, 0, 0, 0, 7, 6)) == 6


def test_degree_overflow_is_an_error():
    p = polyring.Polynomial(1, {(3000,): 1})
    with pytest.raises(OverflowError):
        p * p
