import numpy as np
import pytest

from bispect.groups import SO3, SU2, compose, identity, random_element, z_rotation
from bispect.clebsch import (
    cg_indices,
    clebsch_gordan,
    direct_sum,
    intertwiner_residual,
    subgroup_projection,
    verify_coset_homomorphism,
)
from bispect.wigner import dim, wigner_matrix


def test_index_lists():
    assert cg_indices(SU2, 1, 1) == [2, 0]
    assert cg_indices(SU2, 1, 0) == [1]
    assert cg_indices(SU2, 3, 2) == [5, 3, 1]
    assert cg_indices(SO3, 1, 1) == [2, 1, 0]
    assert cg_indices(SO3, 3, 2) == [5, 4, 3, 2, 1]
    assert cg_indices(SO3, 4, 0) == [4]


def test_tensor_with_trivial_is_identity():
    cg = clebsch_gordan(SU2, 1, 0)
    assert cg.indices == [1]
    assert np.allclose(cg.C, np.eye(2))
    cg = clebsch_gordan(SO3, 0, 3)
    assert np.allclose(cg.C, np.eye(7))


def test_su2_one_one_block_structure(rng):
    cg = clebsch_gordan(SU2, 1, 1)
    assert cg.indices == [2, 0]
    for _ in range(20):
        assert intertwiner_residual(cg, random_element(SU2, rng)) < 1e-10


def test_so3_one_one_block_structure(rng):
    cg = clebsch_gordan(SO3, 1, 1)
    assert cg.indices == [2, 1, 0]
    for _ in range(50):
        assert intertwiner_residual(cg, random_element(SO3, rng)) < 1e-10


@pytest.mark.parametrize("tag,lmax", [(SU2, 6), (SO3, 4)])
def test_cg_unitarity_and_dimensions(tag, lmax):
    for p in range(lmax + 1):
        for q in range(lmax + 1):
            cg = clebsch_gordan(tag, p, q)
            n = dim(p, tag) * dim(q, tag)
            assert sum(dim(a, tag) for a in cg.indices) == n
            assert np.max(np.abs(cg.C.conj().T @ cg.C - np.eye(n))) < 1e-11


def test_cg_deterministic_across_calls():
    from bispect.clebsch import _build_cg

    a = _build_cg(SU2, 2, 2)
    b = _build_cg(SU2, 2, 2)
    assert np.array_equal(a.C, b.C)


def test_cg_block_phase_convention():
    # first significant entry of each block's first column is real positive
    for tag, p, q in ((SU2, 2, 2), (SO3, 2, 1)):
        cg = clebsch_gordan(tag, p, q)
        for sl in cg.block_slices:
            col = cg.C[:, sl.start]
            lead = col[np.argmax(np.abs(col) > 1e-9 * np.max(np.abs(col)))]
            assert lead.real > 0
            assert abs(lead.imag) < 1e-12


def test_projection_trivial():
    sp = subgroup_projection(SO3, 0)
    assert sp.rank == 1
    assert np.allclose(sp.P, [[1.0]])


def test_projection_rank_one_so3():
    for ell in range(9):
        sp = subgroup_projection(SO3, ell)
        assert sp.rank == 1
        assert np.max(np.abs(sp.P @ sp.P - sp.P)) < 1e-11
        assert np.max(np.abs(sp.P - sp.P.conj().T)) < 1e-11


def test_projection_su2_parity():
    for ell in range(9):
        sp = subgroup_projection(SU2, ell)
        assert sp.rank == (1 if ell % 2 == 0 else 0)


def test_projection_matches_numeric_average():
    # closed form agrees with high-resolution integration of D over H
    for tag, ell in ((SO3, 3), (SU2, 4), (SU2, 3)):
        period = 4 * np.pi if tag == SU2 else 2 * np.pi
        thetas = np.linspace(0, period, 2048, endpoint=False)
        acc = np.zeros((dim(ell, tag), dim(ell, tag)), dtype=complex)
        for th in thetas:
            acc += wigner_matrix(ell, tag, z_rotation(th, tag))
        acc /= len(thetas)
        assert np.max(np.abs(acc - subgroup_projection(tag, ell).P)) < 1e-12


def test_projection_tensor_identity():
    # P_s (x) P_d = [P_s (x) P_d] C [dsum P_a] C^dagger, both orders
    for tag in (SU2, SO3):
        for s in range(5):
            for d in range(5):
                cg = clebsch_gordan(tag, s, d)
                lhs = np.kron(subgroup_projection(tag, s).P, subgroup_projection(tag, d).P)
                sand = cg.C @ direct_sum(
                    [subgroup_projection(tag, a).P for a in cg.indices]
                ) @ cg.C.conj().T
                assert np.max(np.abs(lhs - lhs @ sand)) < 1e-10
                assert np.max(np.abs(lhs - sand @ lhs)) < 1e-10


def test_projected_rows_left_h_invariant(rng):
    for tag in (SU2, SO3):
        for ell in range(5):
            p = subgroup_projection(tag, ell).P
            for _ in range(10):
                g = random_element(tag, rng)
                h = z_rotation(rng.uniform(0, 4 * np.pi if tag == SU2 else 2 * np.pi), tag)
                lhs = p @ wigner_matrix(ell, tag, compose(h, g))
                rhs = p @ wigner_matrix(ell, tag, g)
                assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_coset_conditions_identity():
    rep = verify_coset_homomorphism(identity(SO3), 2)
    assert rep.unitary_residual < 1e-12
    assert rep.passed


def test_coset_conditions_random(rng):
    for tag in (SU2, SO3):
        rep = verify_coset_homomorphism(random_element(tag, rng), 3)
        assert rep.max_residual < 1e-10
        assert rep.passed


def test_coset_conditions_negative_control(rng):
    rep = verify_coset_homomorphism(random_element(SO3, rng), 2, corruption=1e-2)
    assert rep.max_residual > 1e-3
    assert not rep.passed
