"""Numerical inner loops, in two interchangeable backends.

The hot kernels (Wigner-d recursion steps, transform accumulations, the
Clebsch-Gordan transfer integral, and the triple-correlation grid) exist
both as numba ``@njit`` functions and as pure-numpy fallbacks.  The
default backend is numba when importable; set ``BISPECT_KERNELS=numpy``
or ``BISPECT_KERNELS=numba`` to force one.  Every public function also
accepts an explicit ``backend=`` override, which is what the benchmark
script uses.

All kernels are deterministic: reductions run in a fixed order, no
threading, so results are bit-stable across repeated calls.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on minimal installs
    HAVE_NUMBA = False

_ENV_VAR = "BISPECT_KERNELS"


def active_backend() -> str:
    """Backend selected by the environment ('numba' or 'numpy')."""
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba" and not HAVE_NUMBA:
            raise RuntimeError("BISPECT_KERNELS=numba but numba is not installed")
        return choice
    return "numba" if HAVE_NUMBA else "numpy"


def _pick(backend: str | None) -> str:
    if backend is None:
        return active_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


# ---------------------------------------------------------------------------
# Wigner little-d half-step recursion.
#
# Given the stack of little-d matrices at spin s (size n = 2s+1) for a batch
# of beta angles, produce the stack at spin s + 1/2 (size n + 1).  Iterating
# from the trivial plane yields every integer and half-integer spin, which
# covers both SU(2) and SO(3) index ranges without factorials.
# ---------------------------------------------------------------------------


def _half_step_numpy(src: np.ndarray, c: np.ndarray, s: np.ndarray) -> np.ndarray:
    nb, n, _ = src.shape
    up = np.sqrt(np.arange(1.0, n + 1.0))
    dn = np.sqrt(np.arange(float(n), 0.0, -1.0))
    w = src / n
    cc = c[:, None, None]
    ss = s[:, None, None]
    out = np.zeros((nb, n + 1, n + 1))
    out[:, :-1, :-1] += (dn[:, None] * dn[None, :]) * w * cc
    out[:, 1:, :-1] -= (up[:, None] * dn[None, :]) * w * ss
    out[:, :-1, 1:] += (dn[:, None] * up[None, :]) * w * ss
    out[:, 1:, 1:] += (up[:, None] * up[None, :]) * w * cc
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _half_step_numba(src, c, s):  # pragma: no cover - numba path
        nb, n, _ = src.shape
        out = np.zeros((nb, n + 1, n + 1))
        for b in range(nb):
            cb = c[b]
            sb = s[b]
            for i in range(n):
                ri = np.sqrt(n - i)
                qi = np.sqrt(i + 1.0)
                for k in range(n):
                    w = src[b, i, k] / n
                    rk = np.sqrt(n - k)
                    qk = np.sqrt(k + 1.0)
                    out[b, i, k] += ri * rk * w * cb
                    out[b, i + 1, k] -= qi * rk * w * sb
                    out[b, i, k + 1] += ri * qk * w * sb
                    out[b, i + 1, k + 1] += qi * qk * w * cb
        return out


def half_step(src: np.ndarray, c: np.ndarray, s: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Advance a little-d stack by one half-integer spin."""
    if _pick(backend) == "numba":
        return _half_step_numba(np.ascontiguousarray(src), c, s)
    return _half_step_numpy(src, c, s)


# ---------------------------------------------------------------------------
# Forward-transform accumulation: F[u, v] = sum_i w_i f_i conj(D_i[v, u]).
# ---------------------------------------------------------------------------


def _weighted_projection_numpy(weights, values, dstack):
    return np.einsum("i,i,ivu->uv", weights, values, np.conj(dstack), optimize=True)


if HAVE_NUMBA:

    @njit(cache=True)
    def _weighted_projection_numba(weights, values, dstack):  # pragma: no cover
        n, d, _ = dstack.shape
        out = np.zeros((d, d), dtype=np.complex128)
        for i in range(n):
            wf = weights[i] * values[i]
            for v in range(d):
                for u in range(d):
                    out[u, v] += wf * np.conj(dstack[i, v, u])
        return out


def weighted_projection(
    weights: np.ndarray, values: np.ndarray, dstack: np.ndarray, backend: str | None = None
) -> np.ndarray:
    """Quadrature projection of sampled values onto one Wigner matrix block."""
    if _pick(backend) == "numba":
        return _weighted_projection_numba(
            np.ascontiguousarray(weights),
            np.ascontiguousarray(values.astype(np.complex128)),
            np.ascontiguousarray(dstack),
        )
    return _weighted_projection_numpy(weights, values, dstack)


# ---------------------------------------------------------------------------
# Inverse-transform accumulation: out_i += scale * Tr(F D_i).
# ---------------------------------------------------------------------------


def _trace_synthesis_numpy(coeff, dstack):
    return np.einsum("uv,ivu->i", coeff, dstack, optimize=True)


if HAVE_NUMBA:

    @njit(cache=True)
    def _trace_synthesis_numba(coeff, dstack):  # pragma: no cover
        n, d, _ = dstack.shape
        out = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            acc = 0.0 + 0.0j
            for u in range(d):
                for v in range(d):
                    acc += coeff[u, v] * dstack[i, v, u]
            out[i] = acc
        return out


def trace_synthesis(coeff: np.ndarray, dstack: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Evaluate Tr(F D(g_i)) on a stack of Wigner matrices."""
    if _pick(backend) == "numba":
        return _trace_synthesis_numba(
            np.ascontiguousarray(coeff.astype(np.complex128)), np.ascontiguousarray(dstack)
        )
    return _trace_synthesis_numpy(coeff, dstack)


# ---------------------------------------------------------------------------
# Clebsch-Gordan transfer integral.
#
# T[(i,k), m] = sum_b w_b  dp[b,i,j] dq[b,k,l] da[b, row, col] x[j,l]
# where row is fixed by m_i + m_k and col by m_j + m_l (the alpha/gamma
# averages of the full group integral collapse to these selection rules on
# the z-y-z product grid).  Index bookkeeping uses doubled m values so both
# integer and half-integer spins stay in integer arithmetic.
# ---------------------------------------------------------------------------


def _cg_transfer_numpy(dp, dq, da, w, m2p, m2q, j2a, x):
    nb, dimp, _ = dp.shape
    dimq = dq.shape[1]
    dima = da.shape[1]
    msum = m2p[:, None] + m2q[None, :]  # doubled m sums, (dimp, dimq)
    t = msum + j2a
    ok = (t >= 0) & (t <= 2 * j2a) & (t % 2 == 0)
    idx = np.where(ok, t // 2, 0)
    # da sliced to row/col determined by the (i,k) and (j,l) sums
    da_sel = da[:, idx[:, :, None, None], idx[None, None, :, :]]  # (nb, dimp, dimq, dimp, dimq)
    mask = ok[:, :, None, None] & ok[None, None, :, :]
    prod = dp[:, :, None, :, None] * dq[:, None, :, None, :] * da_sel * mask
    t_ik = np.einsum("b,bikjl,jl->ik", w, prod, x, optimize=True)
    out = np.zeros((dimp * dimq, dima))
    rows = np.arange(dimp * dimq)
    out[rows[ok.ravel()], idx.ravel()[ok.ravel()]] = t_ik.ravel()[ok.ravel()]
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _cg_transfer_numba(dp, dq, da, w, m2p, m2q, j2a, x):  # pragma: no cover
        nb, dimp, _ = dp.shape
        dimq = dq.shape[1]
        dima = da.shape[1]
        out = np.zeros((dimp * dimq, dima))
        for i in range(dimp):
            for k in range(dimq):
                t = m2p[i] + m2q[k] + j2a
                if t < 0 or t > 2 * j2a or t % 2 != 0:
                    continue
                row = t // 2
                acc = 0.0
                for j in range(dimp):
                    for l in range(dimq):
                        u = m2p[j] + m2q[l] + j2a
                        if u < 0 or u > 2 * j2a or u % 2 != 0:
                            continue
                        col = u // 2
                        s = 0.0
                        for b in range(nb):
                            s += w[b] * dp[b, i, j] * dq[b, k, l] * da[b, row, col]
                        acc += s * x[j, l]
                out[i * dimq + k, row] = acc
        return out


def cg_transfer(
    dp: np.ndarray,
    dq: np.ndarray,
    da: np.ndarray,
    w: np.ndarray,
    m2p: np.ndarray,
    m2q: np.ndarray,
    j2a: int,
    x: np.ndarray,
    backend: str | None = None,
) -> np.ndarray:
    """Beta-quadrature of the intertwiner transfer map for one target block."""
    if _pick(backend) == "numba":
        return _cg_transfer_numba(
            np.ascontiguousarray(dp),
            np.ascontiguousarray(dq),
            np.ascontiguousarray(da),
            np.ascontiguousarray(w),
            m2p,
            m2q,
            j2a,
            np.ascontiguousarray(x),
        )
    return _cg_transfer_numpy(dp, dq, da, w, m2p, m2q, j2a, x)


# ---------------------------------------------------------------------------
# Triple-correlation grid: a3[j, k] = sum_i (w_i conj(f_i)) U[j, i] U[k, i].
# ---------------------------------------------------------------------------


def _triple_grid_numpy(wf_conj, u):
    return (u * wf_conj[None, :]) @ u.T


if HAVE_NUMBA:

    @njit(cache=True)
    def _triple_grid_numba(wf_conj, u):  # pragma: no cover
        m, n = u.shape
        out = np.zeros((m, m), dtype=np.complex128)
        for j in range(m):
            for k in range(m):
                acc = 0.0 + 0.0j
                for i in range(n):
                    acc += wf_conj[i] * u[j, i] * u[k, i]
                out[j, k] = acc
        return out


def triple_grid(wf_conj: np.ndarray, u: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Bilinear accumulation of translated samples into the correlation grid.

    Defaults to the gemm formulation even under the numba backend: BLAS wins
    by an order of magnitude here (see benchmarks/bench_kernels.py).  The
    loop variant stays available through an explicit ``backend="numba"``.
    """
    if backend is None:
        backend = "numpy"
    if _pick(backend) == "numba":
        return _triple_grid_numba(
            np.ascontiguousarray(wf_conj.astype(np.complex128)),
            np.ascontiguousarray(u.astype(np.complex128)),
        )
    return _triple_grid_numpy(wf_conj.astype(np.complex128), u.astype(np.complex128))


def warm_up() -> None:
    """Compile the numba kernels on tiny inputs (no-op for the numpy backend)."""
    if active_backend() != "numba":
        return
    betas = np.array([0.3])
    plane = np.ones((1, 1, 1))
    half_step(plane, np.cos(betas / 2), np.sin(betas / 2))
    d = np.eye(2, dtype=np.complex128)[None, :, :]
    weighted_projection(np.ones(1), np.ones(1, dtype=np.complex128), d)
    trace_synthesis(np.eye(2, dtype=np.complex128), d)
    cg_transfer(
        np.ones((1, 2, 2)),
        np.ones((1, 2, 2)),
        np.ones((1, 3, 3)),
        np.ones(1),
        np.array([-1, 1], dtype=np.int64),
        np.array([-1, 1], dtype=np.int64),
        2,
        np.ones((2, 2)),
    )
    triple_grid(np.ones(2, dtype=np.complex128), np.ones((2, 2), dtype=np.complex128))
