import numpy as np
import pytest

from bispect import kernels


needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


def test_backend_selection(monkeypatch):
    monkeypatch.setenv("BISPECT_KERNELS", "numpy")
    assert kernels.active_backend() == "numpy"
    monkeypatch.delenv("BISPECT_KERNELS")
    assert kernels.active_backend() in ("numba", "numpy")
    with pytest.raises(ValueError):
        kernels.half_step(np.ones((1, 1, 1)), np.ones(1), np.zeros(1), backend="cuda")


@needs_numba
def test_half_step_backend_parity(rng):
    src = rng.standard_normal((5, 4, 4))
    c = rng.uniform(0.2, 0.9, 5)
    s = np.sqrt(1 - c**2)
    a = kernels.half_step(src, c, s, backend="numpy")
    b = kernels.half_step(src, c, s, backend="numba")
    assert np.max(np.abs(a - b)) < 1e-14


@needs_numba
def test_weighted_projection_backend_parity(rng):
    n, d = 50, 4
    w = rng.uniform(0.1, 1.0, n)
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    stack = rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))
    a = kernels.weighted_projection(w, f, stack, backend="numpy")
    b = kernels.weighted_projection(w, f, stack, backend="numba")
    assert np.max(np.abs(a - b)) < 1e-12


@needs_numba
def test_trace_synthesis_backend_parity(rng):
    n, d = 50, 4
    coeff = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    stack = rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))
    a = kernels.trace_synthesis(coeff, stack, backend="numpy")
    b = kernels.trace_synthesis(coeff, stack, backend="numba")
    assert np.max(np.abs(a - b)) < 1e-12


@needs_numba
def test_cg_transfer_backend_parity(rng):
    from bispect.groups import SU2
    from bispect.wigner import little_d_stack, m_values

    x, wts = np.polynomial.legendre.leggauss(5)
    betas = np.arccos(x)
    planes = little_d_stack(8, betas)
    dp, dq, da = planes[4], planes[4], planes[6]
    m2 = np.round(2 * m_values(4, SU2)).astype(np.int64)
    seed = rng.standard_normal((5, 5))
    a = kernels.cg_transfer(dp, dq, da, wts / 2, m2, m2, 6, seed, backend="numpy")
    b = kernels.cg_transfer(dp, dq, da, wts / 2, m2, m2, 6, seed, backend="numba")
    assert np.max(np.abs(a - b)) < 1e-13


@needs_numba
def test_triple_grid_backend_parity(rng):
    wf = rng.standard_normal(30) + 1j * rng.standard_normal(30)
    u = rng.standard_normal((8, 30)) + 1j * rng.standard_normal((8, 30))
    a = kernels.triple_grid(wf, u, backend="numpy")
    b = kernels.triple_grid(wf, u, backend="numba")
    assert np.max(np.abs(a - b)) < 1e-12


def test_numpy_backend_runs_whole_pipeline(monkeypatch):
    # the flag must flip every kernel call, end to end
    monkeypatch.setenv("BISPECT_KERNELS", "numpy")
    from bispect.groups import SU2, haar_quadrature
    from bispect.harmonic import fourier_forward, fourier_inverse, random_bandlimited

    coeffs = random_bandlimited(2, SU2, seed=17)
    rule = haar_quadrature(4, SU2)
    back = fourier_forward(fourier_inverse(coeffs, rule), 2)
    assert max(float(np.max(np.abs(coeffs[l] - back[l]))) for l in range(3)) < 1e-10
