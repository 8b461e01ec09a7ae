"""Functions on the sphere: grids, harmonic analysis, lifting to SO(3).

The lift follows the north-pole map f(R) = s(R z) with z = (0, 0, 1).
Writing R in z-y-z Euler angles, R z depends only on (beta, alpha), so the
gamma average forces every lifted Fourier coefficient matrix into its
m' = 0 row: P_ell F(ell) = F(ell), hence rank F(ell) <= 1.  Composing the
sphere function with a rotation x (s -> s(x .)) left-translates the lift,
so lifted bispectrum descriptors are exactly rotation invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, TagMismatchError
from .groups import SO3, GroupElement
from .harmonic import CoefficientSet
from .wigner import little_d_stack


@dataclass(frozen=True)
class SphereGrid:
    """Equiangular (theta, phi) grid with exactness-matched theta weights."""

    resolution: int  # B; the grid is (2B) x (2B)
    thetas: np.ndarray
    phis: np.ndarray
    theta_weights: np.ndarray  # sum to 2 = integral of sin(theta)

    def __post_init__(self):
        for name in ("thetas", "phis", "theta_weights"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def shape(self) -> tuple[int, int]:
        return (2 * self.resolution, 2 * self.resolution)

    def unit_vectors(self) -> np.ndarray:
        """Cartesian points of the grid, shape (2B, 2B, 3)."""
        th = self.thetas[:, None]
        ph = self.phis[None, :]
        return np.stack(
            [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th) * np.ones_like(ph)],
            axis=-1,
        )


@lru_cache(maxsize=32)
def sphere_grid(resolution: int) -> SphereGrid:
    """Midpoint-equiangular grid; theta weights solve the Legendre moment system."""
    if resolution < 1:
        raise DomainError("resolution must be >= 1")
    n = 2 * resolution
    thetas = np.pi * (2 * np.arange(n) + 1) / (2 * n)
    phis = 2 * np.pi * np.arange(n) / n
    x = np.cos(thetas)
    vander = np.polynomial.legendre.legvander(x, n - 1).T  # rows P_k(x_j)
    moments = np.zeros(n)
    moments[0] = 2.0
    weights = np.linalg.solve(vander, moments)
    return SphereGrid(resolution, thetas, phis, weights)


@dataclass(frozen=True)
class SphereFunction:
    """Samples on an equiangular grid covering theta in [0, pi], phi in [0, 2pi)."""

    grid: SphereGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.grid.shape:
            raise DomainError(f"values must have shape {self.grid.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def resolution(self) -> int:
        return self.grid.resolution


def _column_planes(grid: SphereGrid, bandlimit: int) -> list[np.ndarray]:
    """d^ell_{n,0}(theta_j) columns for ell <= bandlimit; entry ell is (2B, 2ell+1)."""
    cache = grid.__dict__.setdefault("_d_columns", {})
    if cache.get("bandlimit", -1) < bandlimit:
        planes = little_d_stack(2 * bandlimit, grid.thetas)
        cache["cols"] = [planes[2 * ell][:, :, ell] for ell in range(bandlimit + 1)]
        cache["bandlimit"] = bandlimit
    return cache["cols"]


def sphere_coefficients(s: SphereFunction, bandlimit: int) -> list[np.ndarray]:
    """Harmonic coefficient row vectors a_ell[n], n = -ell..ell ascending.

    a_ell[n] = (1/4pi) * integral of s(theta, phi) e^{i n phi} d^ell_{n0}(theta).
    Exact for functions bandlimited at the grid's resolution - 1.
    """
    grid = s.grid
    n = 2 * grid.resolution
    cols = _column_planes(grid, bandlimit)
    out = []
    for ell in range(bandlimit + 1):
        ms = np.arange(-ell, ell + 1)
        phase = np.exp(1j * np.outer(grid.phis, ms))  # (2B, 2ell+1)
        theta_part = (grid.theta_weights[:, None] * cols[ell]).T  # (2ell+1, 2B)
        a = (theta_part @ s.values @ phase).diagonal() if False else np.einsum(
            "nj,jk,kn->n", theta_part, s.values, phase
        )
        out.append(a * (2 * np.pi / n) / (4 * np.pi))
    return out


def sphere_lift(s: SphereFunction, bandlimit: int) -> CoefficientSet:
    """Fourier coefficients on SO(3) of the north-pole lift f(R) = s(R z)."""
    coeffs = sphere_coefficients(s, bandlimit)
    mats = []
    for ell, a in enumerate(coeffs):
        m = np.zeros((2 * ell + 1, 2 * ell + 1), dtype=complex)
        m[ell, :] = a  # m' = 0 row
        mats.append(m)
    return CoefficientSet(SO3, bandlimit, tuple(mats))


def sphere_synthesis(coeffs: list[np.ndarray], grid: SphereGrid) -> SphereFunction:
    """Evaluate sum_ell (2ell+1) sum_n a_ell[n] e^{-i n phi} d^ell_{n0}(theta) on the grid."""
    bandlimit = len(coeffs) - 1
    cols = _column_planes(grid, bandlimit)
    vals = np.zeros(grid.shape, dtype=complex)
    for ell, a in enumerate(coeffs):
        ms = np.arange(-ell, ell + 1)
        phase = np.exp(-1j * np.outer(ms, grid.phis))  # (2ell+1, 2B)
        vals += (2 * ell + 1) * (cols[ell] * a[None, :]) @ phase
    return SphereFunction(grid, vals)


def sphere_eval(coeffs: list[np.ndarray], thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Pointwise synthesis at arbitrary (theta, phi) arrays of equal shape."""
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    flat_t = thetas.reshape(-1)
    flat_p = phis.reshape(-1)
    bandlimit = len(coeffs) - 1
    planes = little_d_stack(2 * bandlimit, flat_t)
    out = np.zeros(flat_t.size, dtype=complex)
    for ell, a in enumerate(coeffs):
        ms = np.arange(-ell, ell + 1)
        dcol = planes[2 * ell][:, :, ell]  # (N, 2ell+1)
        phase = np.exp(-1j * flat_p[:, None] * ms[None, :])
        out += (2 * ell + 1) * np.sum(dcol * phase * a[None, :], axis=1)
    return out.reshape(thetas.shape)


def rotate_sphere(
    s: SphereFunction, x: GroupElement, bandlimit: int | None = None, method: str = "harmonic"
) -> SphereFunction:
    """Pullback s -> s(x .), sampled back onto the grid.

    'harmonic' resamples through the band-limited synthesis (exact for
    functions bandlimited at the given bandlimit); 'bilinear' interpolates
    the raw grid and is appropriate for arbitrary samples.
    """
    if x.tag != SO3:
        raise TagMismatchError("rotate_sphere needs an SO3 element")
    grid = s.grid
    v = grid.unit_vectors() @ x.data.T  # x applied to every grid direction
    vz = np.clip(v[..., 2], -1.0, 1.0)
    thetas = np.arccos(vz)
    phis = np.mod(np.arctan2(v[..., 1], v[..., 0]), 2 * np.pi)
    if method == "harmonic":
        if bandlimit is None:
            bandlimit = grid.resolution - 1
        coeffs = sphere_coefficients(s, bandlimit)
        return SphereFunction(grid, sphere_eval(coeffs, thetas, phis))
    if method == "bilinear":
        return SphereFunction(grid, _bilinear_sample(s, thetas, phis))
    raise DomainError(f"unknown rotation method {method!r}")


def _bilinear_sample(s: SphereFunction, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Bilinear interpolation, periodic in phi, clamped at the poles."""
    grid = s.grid
    n = 2 * grid.resolution
    dt = np.pi / n
    dp = 2 * np.pi / n
    ti = (thetas - grid.thetas[0]) / dt
    pi_ = phis / dp
    t0 = np.clip(np.floor(ti).astype(int), 0, n - 1)
    t1 = np.clip(t0 + 1, 0, n - 1)
    ft = np.clip(ti - t0, 0.0, 1.0)
    p0 = np.floor(pi_).astype(int) % n
    p1 = (p0 + 1) % n
    fp = pi_ - np.floor(pi_)
    v = s.values
    return (
        v[t0, p0] * (1 - ft) * (1 - fp)
        + v[t1, p0] * ft * (1 - fp)
        + v[t0, p1] * (1 - ft) * fp
        + v[t1, p1] * ft * fp
    )


def random_sphere_function(
    resolution: int, bandlimit: int, seed: int = 0, real: bool = True
) -> SphereFunction:
    """Seeded random bandlimited sphere function (bandlimit-projected noise)."""
    grid = sphere_grid(resolution)
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal(grid.shape)
    if not real:
        raw = raw + 1j * rng.standard_normal(grid.shape)
    coeffs = sphere_coefficients(SphereFunction(grid, raw.astype(complex)), bandlimit)
    return sphere_synthesis(coeffs, grid)


def h_rank_report(coeffs: CoefficientSet, tol: float = 1e-9) -> dict[int, dict]:
    """Numerical rank of each F(ell) against the projection rank (1 on SO3).

    A lifted coefficient set has maximal H-rank exactly when every degree's
    harmonic coefficient vector is nonzero.
    """
    if coeffs.tag != SO3:
        raise TagMismatchError("H-rank check applies to SO3 coefficient sets")
    scale = max(
        (float(np.linalg.norm(coeffs[ell], 2)) for ell in range(coeffs.bandlimit + 1)), default=0.0
    )
    report = {}
    for ell in range(coeffs.bandlimit + 1):
        svals = np.linalg.svd(coeffs[ell], compute_uv=False)
        rank = int(np.sum(svals > tol * max(scale, 1e-300)))
        report[ell] = {"rank": rank, "projection_rank": 1, "maximal": rank == 1}
    return report
