import numpy as np
import pytest

from bispect.errors import TagMismatchError
from bispect.groups import SO3, SU2, random_element, z_rotation
from bispect.harmonic import translate
from bispect.clebsch import subgroup_projection
from bispect.sphere import (
    SphereFunction,
    h_rank_report,
    random_sphere_function,
    rotate_sphere,
    sphere_coefficients,
    sphere_grid,
    sphere_lift,
    sphere_synthesis,
)


def test_theta_weights_integrate_legendre_exactly():
    for resolution in (4, 8, 16):
        grid = sphere_grid(resolution)
        x = np.cos(grid.thetas)
        for k in range(2 * resolution):
            val = np.dot(grid.theta_weights, np.polynomial.legendre.Legendre.basis(k)(x))
            assert abs(val - (2.0 if k == 0 else 0.0)) < 1e-11


def test_coefficient_synthesis_round_trip(rng):
    grid = sphere_grid(8)
    coeffs = [rng.standard_normal(2 * l + 1) + 1j * rng.standard_normal(2 * l + 1) for l in range(7)]
    s = sphere_synthesis(coeffs, grid)
    back = sphere_coefficients(s, 6)
    for l in range(7):
        assert np.max(np.abs(coeffs[l] - back[l])) < 1e-12


def test_constant_sphere_function_lifts_to_delta():
    grid = sphere_grid(8)
    s = SphereFunction(grid, np.ones(grid.shape, dtype=complex))
    coeffs = sphere_lift(s, 4)
    assert abs(coeffs[0].ravel()[0] - 1.0) < 1e-12
    for ell in range(1, 5):
        assert np.max(np.abs(coeffs[ell])) < 1e-12


def test_degree_two_harmonic_lift():
    grid = sphere_grid(8)
    harm = [np.zeros(2 * l + 1, dtype=complex) for l in range(5)]
    harm[2][4] = 0.5 + 0.2j
    harm[2][0] = np.conj(harm[2][4])
    s = sphere_synthesis(harm, grid)
    coeffs = sphere_lift(s, 4)
    for ell in (0, 1, 3, 4):
        assert np.max(np.abs(coeffs[ell])) < 1e-12
    svals = np.linalg.svd(coeffs[2], compute_uv=False)
    assert svals[0] > 1e-3 and svals[1] < 1e-12


def test_lift_row_support_and_rank():
    s = random_sphere_function(8, 5, seed=4)
    coeffs = sphere_lift(s, 5)
    for ell in range(6):
        p = subgroup_projection(SO3, ell).P
        assert np.max(np.abs(p @ coeffs[ell] - coeffs[ell])) < 1e-12
        assert np.linalg.matrix_rank(coeffs[ell], tol=1e-10) == 1
    report = h_rank_report(coeffs)
    assert all(entry["maximal"] for entry in report.values())


def test_h_rank_detects_missing_degree():
    s = random_sphere_function(8, 3, seed=5)
    coeffs = sphere_lift(s, 5)  # degrees 4, 5 vanish
    report = h_rank_report(coeffs)
    assert report[2]["maximal"]
    assert not report[5]["maximal"]


def test_h_rank_requires_so3():
    from bispect.harmonic import random_bandlimited

    with pytest.raises(TagMismatchError):
        h_rank_report(random_bandlimited(2, SU2, seed=1))


def test_lift_rotation_invariance(rng):
    # composing with a rotation then lifting equals translating the lift
    bandlimit = 6
    s = random_sphere_function(8, bandlimit, seed=6)
    coeffs = sphere_lift(s, bandlimit)
    for _ in range(3):
        x = random_element(SO3, rng)
        rotated = rotate_sphere(s, x, bandlimit=bandlimit, method="harmonic")
        lhs = sphere_lift(rotated, bandlimit)
        rhs = translate(coeffs, x)
        for ell in range(bandlimit + 1):
            assert np.max(np.abs(lhs[ell] - rhs[ell])) < 1e-8


def test_rotation_composes():
    s = random_sphere_function(6, 4, seed=7)
    x = z_rotation(0.9)
    one = rotate_sphere(rotate_sphere(s, x, bandlimit=4), x, bandlimit=4)
    both = rotate_sphere(s, z_rotation(1.8), bandlimit=4)
    assert np.max(np.abs(one.values - both.values)) < 1e-9


def test_bilinear_rotation_tracks_harmonic_loosely():
    # raw-grid interpolation is the coarse fallback; just pin its scale
    s = random_sphere_function(16, 6, seed=8)
    x = z_rotation(0.4)
    a = rotate_sphere(s, x, bandlimit=6, method="harmonic")
    b = rotate_sphere(s, x, method="bilinear")
    scale = np.max(np.abs(s.values))
    assert np.max(np.abs(a.values - b.values)) < 0.2 * scale


def test_rotate_sphere_rejects_su2(rng):
    s = random_sphere_function(6, 4, seed=9)
    with pytest.raises(TagMismatchError):
        rotate_sphere(s, random_element(SU2, rng))
