"""The numba fast path and the numpy fallback must agree bit-tightly."""

import os
import subprocess
import sys

import numpy as np

from qutrit_dephasing import _kernels
from qutrit_dephasing._kernels import (
    _average_propagated_numpy,
    _phases_trapezoid_numpy,
    average_propagated,
    phases_trapezoid,
)

RNG = np.random.default_rng(7)


def test_average_propagated_paths_agree():
    phis = RNG.normal(scale=1.3, size=4096)
    a = RNG.normal(size=(3, 3)) + 1j * RNG.normal(size=(3, 3))
    rho0 = a @ a.conj().T
    rho0 /= np.trace(rho0).real
    active = average_propagated(phis, rho0)
    fallback = _average_propagated_numpy(phis, rho0)
    assert np.max(np.abs(active - fallback)) < 1e-13


def test_average_propagated_order_insensitive():
    phis = RNG.normal(size=2000)
    rho0 = np.full((3, 3), 1.0 / 3.0, dtype=complex)
    forward = average_propagated(phis, rho0)
    shuffled = average_propagated(phis[::-1].copy(), rho0)
    assert np.max(np.abs(forward - shuffled)) < 1e-14


def test_phases_trapezoid_paths_agree():
    grid = np.sort(RNG.uniform(0.0, 2.0, size=64))
    grid[0] = 0.0
    paths = RNG.normal(size=(50, 64))
    active = phases_trapezoid(paths, grid, 1.7)
    fallback = _phases_trapezoid_numpy(paths, grid, 1.7)
    assert np.max(np.abs(active - fallback)) < 1e-13


def test_env_flag_selects_fallback():
    env = dict(os.environ, QUTRIT_DEPHASING_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from qutrit_dephasing import USING_NUMBA; print(USING_NUMBA)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "False"


def test_numba_enabled_by_default():
    # the installed environment has numba; the flag is the only off switch
    env = {k: v for k, v in os.environ.items() if k != "QUTRIT_DEPHASING_NO_NUMBA"}
    out = subprocess.run(
        [sys.executable, "-c", "from qutrit_dephasing import USING_NUMBA; print(USING_NUMBA)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "True"


def test_fallback_results_match_subprocess():
    # full numerical agreement between a fallback subprocess and this process
    code = (
        "import numpy as np\n"
        "from qutrit_dephasing._kernels import average_propagated, USING_NUMBA\n"
        "assert not USING_NUMBA\n"
        "phis = np.linspace(-2.0, 2.0, 1001)\n"
        "rho0 = np.full((3, 3), 1/3, dtype=complex)\n"
        "np.save('/tmp/_qk_fallback.npy', average_propagated(phis, rho0))\n"
    )
    env = dict(os.environ, QUTRIT_DEPHASING_NO_NUMBA="1")
    subprocess.run([sys.executable, "-c", code], env=env, check=True)
    fallback = np.load("/tmp/_qk_fallback.npy")
    phis = np.linspace(-2.0, 2.0, 1001)
    rho0 = np.full((3, 3), 1 / 3, dtype=complex)
    assert np.max(np.abs(_kernels.average_propagated(phis, rho0) - fallback)) < 1e-13
