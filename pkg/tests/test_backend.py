"""Compiled-core vs NumPy-core parity on random inputs."""

import numpy as np
import pytest

from antkinetics import _core_py as pure
from antkinetics import backend
from antkinetics.field import shift_tables

compiled = pytest.importorskip("antkinetics._core",
                               reason="compiled core not built")


def test_backend_reports_compiled():
    # with the extension importable and ANTKINETICS_PURE unset, the
    # dispatcher must pick it
    import os
    if os.environ.get("ANTKINETICS_PURE", "") in ("", "0"):
        assert backend.COMPILED
        assert backend.backend_name() == "compiled"


def test_bessel_parity():
    xs = np.geomspace(1e-6, 700.0, 2000)
    np.testing.assert_array_equal(compiled.bessel_k0_many(xs),
                                  pure.bessel_k0_many(xs))
    np.testing.assert_array_equal(compiled.bessel_k1_many(xs),
                                  pure.bessel_k1_many(xs))


def test_pair_torques_parity():
    rng = np.random.default_rng(0)
    for n in (1, 2, 8, 33):
        pos = rng.random((n, 2))
        ang = rng.random(n) * 2 * np.pi
        for lam in (0.0, 0.1):
            fc, nc = compiled.pair_torques(pos, ang, 300.0, lam, 1.0, 1.0, 1e-8)
            fp, np_ = pure.pair_torques(pos, ang, 300.0, lam, 1.0, 1.0, 1e-8)
            assert nc == np_
            np.testing.assert_allclose(fc, fp, rtol=1e-13, atol=1e-13)


def test_pair_torques_near_singular_count():
    pos = np.array([[0.5, 0.5], [0.5, 0.5], [0.1, 0.1]])
    ang = np.array([0.0, 1.0, 2.0])
    fc, nc = compiled.pair_torques(pos, ang, 1.0, 0.0, 1.0, 1.0, 1e-8)
    fp, np_ = pure.pair_torques(pos, ang, 1.0, 0.0, 1.0, 1.0, 1e-8)
    assert nc == np_ == 2  # the coincident pair, counted from both sides
    assert np.all(np.isfinite(fc))


def test_shifted_values_parity():
    rng = np.random.default_rng(1)
    c = rng.random((17, 13))
    bi, bj, wi, wj = shift_tables(9, 0.23, 1 / 17, 1 / 13)
    np.testing.assert_array_equal(compiled.shifted_values(c, bi, bj, wi, wj),
                                  pure.shifted_values(c, bi, bj, wi, wj))


def _rhs_inputs(rng, nx, ny, nt, lam):
    f = rng.random((nx, ny, nt)) + 0.05
    logf = np.log(np.maximum(f, 1e-12))
    c = rng.random((nx, ny))
    dcdx = (np.roll(c, -1, 0) - np.roll(c, 1, 0)) * (nx / 2)
    dcdy = (np.roll(c, -1, 1) - np.roll(c, 1, 1)) * (ny / 2)
    th = 2 * np.pi * np.arange(nt) / nt
    dth = 2 * np.pi / nt
    if lam > 0:
        bi, bj, wi, wj = shift_tables(nt, lam, 1 / nx, 1 / ny)
        cshift = pure.shifted_values(c, bi, bj, wi, wj)
    else:
        cshift = np.zeros((1, 1, 1))
    return (f, logf, dcdx, dcdy, cshift, np.cos(th), np.sin(th),
            np.cos(th + dth / 2), np.sin(th + dth / 2),
            0.01, 2.5, 140.0, lam, 1 / nx, 1 / ny, dth)


@pytest.mark.parametrize("lam", [0.0, 0.1])
def test_fv_rhs_parity(lam):
    rng = np.random.default_rng(2)
    args = _rhs_inputs(rng, 14, 11, 9, lam)
    rhs_c = np.empty_like(args[0])
    rhs_p = np.empty_like(args[0])
    sp_c = compiled.fv_rhs_core(*args, rhs_c)
    sp_p = pure.fv_rhs_core(*args, rhs_p)
    np.testing.assert_allclose(rhs_c, rhs_p, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(sp_c, sp_p, rtol=1e-13)


def test_pure_env_var_forces_numpy(tmp_path):
    import subprocess
    import sys
    code = ("import antkinetics; "
            "print(antkinetics.backend_name())")
    out = subprocess.run([sys.executable, "-c", code],
                         env={"ANTKINETICS_PURE": "1", "PATH": "/usr/bin:/bin"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
