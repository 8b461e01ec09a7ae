"""Recovering coefficient sets from bispectrum descriptors.

The driver inverts the descriptor degree by degree: the mean from the cube
root of A(0, 0), the degree-1 matrix from a square root of A(1, 0)/F(0)
(positive root on SU2, where real origin functions force a nonnegative
determinant; sign-matched root on SO3 using the stored det side
information), and each higher degree from the leading block of

    C^+ [F(l-1)^-1 (x) F(1)^-1] A(l-1, 1) C .

Every recovered set equals the true one up to one right factor D_ell(x),
the group translation the descriptor cannot see; ``find_alignment``
recovers that x when ground truth is available.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DomainError,
    MissingSideInfoError,
    NoAlignmentError,
    NotPositiveSemidefiniteError,
    SingularCoefficientError,
    SingularMatrixError,
    TagMismatchError,
    ZeroMeanError,
)
from .groups import SO3, SU2, GroupElement, haar_quadrature, z_rotation
from .harmonic import COND_REJECT, CoefficientSet
from .bispectrum import BispectrumDescriptor
from .clebsch import clebsch_gordan
from .wigner import (
    CARTESIAN_TO_SPHERICAL,
    SU2_BASIS_SWAP,
    dim,
    wigner_matrix,
    wigner_stack_on_rule,
)

_HERMITICITY_TOL = 1e-10


def _check_hermitian(m: np.ndarray, tol: float = _HERMITICITY_TOL) -> np.ndarray:
    scale = max(float(np.linalg.norm(m)), 1.0)
    if np.max(np.abs(m - m.conj().T)) > tol * scale:
        raise DomainError("matrix is not Hermitian within tolerance")
    return 0.5 * (m + m.conj().T)


def positive_sqrt(hm: np.ndarray) -> np.ndarray:
    """Unique Hermitian PSD square root; mildly negative eigenvalues clamp to 0."""
    hm = _check_hermitian(np.asarray(hm, dtype=complex))
    vals, vecs = np.linalg.eigh(hm)
    scale = max(float(vals[-1]), 0.0)
    if vals[0] < -1e-10 * max(scale, 1.0):
        raise NotPositiveSemidefiniteError(f"eigenvalue {vals[0]:.3e} is significantly negative")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def signed_sqrt(hm: np.ndarray, target_det: float) -> np.ndarray:
    """Hermitian square root whose determinant sign matches ``target_det``.

    A negative target flips the sign of the square root of the smallest
    eigenvalue (ties broken by the first index), which keeps R R = hm while
    reaching the requested determinant.
    """
    hm = _check_hermitian(np.asarray(hm, dtype=complex))
    vals, vecs = np.linalg.eigh(hm)
    if vals[0] <= 0 or vals[-1] / vals[0] > COND_REJECT:
        raise SingularMatrixError("signed_sqrt needs a nonsingular PSD matrix")
    root = np.sqrt(vals)
    mag = float(np.prod(root))
    if abs(abs(target_det) - mag) > 1e-6 * mag:
        raise DomainError(
            f"|target_det|={abs(target_det):.6e} does not match sqrt(det)={mag:.6e}"
        )
    if target_det < 0:
        root[0] = -root[0]  # eigh sorts ascending: index 0 is the smallest
    return (vecs * root) @ vecs.conj().T


def polar_decompose(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """A = H U with H Hermitian positive definite and U unitary."""
    a = np.asarray(a, dtype=complex)
    svals = np.linalg.svd(a, compute_uv=False)
    if svals[-1] <= 0 or svals[0] / svals[-1] > COND_REJECT:
        raise SingularMatrixError("polar decomposition needs a well-conditioned matrix")
    h = positive_sqrt(a @ a.conj().T)
    u = np.linalg.solve(h, a)
    return h, u


@dataclass(frozen=True)
class AlignmentWitness:
    x: GroupElement
    per_ell_residuals: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.per_ell_residuals)


@dataclass
class ReconstructionReport:
    recovered: CoefficientSet
    condition_numbers: dict[int, float] = field(default_factory=dict)
    witness: AlignmentWitness | None = None


def _alignment_residuals(
    truth: CoefficientSet, recovered: CoefficientSet, x: GroupElement
) -> tuple[float, ...]:
    out = []
    for ell in range(truth.bandlimit + 1):
        target = truth[ell] @ wigner_matrix(ell, truth.tag, x)
        denom = max(float(np.linalg.norm(truth[ell])), 1e-300)
        out.append(float(np.linalg.norm(recovered[ell] - target)) / denom)
    return tuple(out)


def _project_su2(v: np.ndarray) -> GroupElement:
    """Nearest SU2 element to a 2x2 matrix given in the degree-1 basis."""
    u = SU2_BASIS_SWAP @ v @ SU2_BASIS_SWAP  # back to the self-representation
    _, w = polar_decompose(u)
    det = complex(np.linalg.det(w))
    w = w / np.sqrt(det)  # principal branch lands next to the input
    quat = np.array(
        [0.5 * (w[0, 0] + w[1, 1]).real, -0.5 * (w[0, 1] + w[1, 0]).imag,
         0.5 * (w[1, 0] - w[0, 1]).real, 0.5 * (w[1, 1] - w[0, 0]).imag]
    )
    quat /= np.linalg.norm(quat)
    gap = float(np.max(np.abs(u - _su2_from_quat(quat))))
    if gap > 1e-3:
        raise NoAlignmentError(f"degree-1 quotient is {gap:.3e} away from SU(2)")
    return GroupElement(SU2, quat)


def _su2_from_quat(q: np.ndarray) -> np.ndarray:
    w, x, y, z = q
    return np.array([[w - 1j * z, -y - 1j * x], [y - 1j * x, w + 1j * z]])


def _project_so3(v: np.ndarray) -> GroupElement:
    """Nearest SO3 element to a 3x3 matrix given in the degree-1 basis."""
    u = CARTESIAN_TO_SPHERICAL
    r = (u.conj().T @ v @ u).real
    _, w = polar_decompose(r)
    w = w.real
    if np.linalg.det(w) < 0:
        raise NoAlignmentError("degree-1 quotient has determinant -1")
    gap = float(np.max(np.abs(v - u @ w @ u.conj().T)))
    if gap > 1e-3:
        raise NoAlignmentError(f"degree-1 quotient is {gap:.3e} away from SO(3)")
    return GroupElement(SO3, w)


def find_alignment(truth: CoefficientSet, recovered: CoefficientSet) -> AlignmentWitness:
    """Find x with recovered(ell) = truth(ell) D_ell(x) for all degrees.

    Needs a nonsingular degree-1 coefficient; rank-deficient sets (sphere
    lifts) fall back to a correlation search over the group followed by a
    local refinement.
    """
    if (truth.tag, truth.bandlimit) != (recovered.tag, recovered.bandlimit):
        raise TagMismatchError("coefficient sets differ in group or bandlimit")
    if truth.bandlimit < 1:
        raise DomainError("alignment needs at least degree 1")
    f1 = truth[1]
    well_posed = np.linalg.cond(f1) < 1e6
    if well_posed:
        v = np.linalg.solve(f1, recovered[1])
        x = _project_su2(v) if truth.tag == SU2 else _project_so3(v)
    else:
        x = _correlation_alignment(truth, recovered)
    residuals = _alignment_residuals(truth, recovered, x)
    if max(residuals) > 1e-3:
        raise NoAlignmentError(f"residual {max(residuals):.3e} after alignment")
    return AlignmentWitness(x, residuals)


def _correlation_alignment(truth: CoefficientSet, recovered: CoefficientSet) -> GroupElement:
    """Maximize Re sum_ell dim <recovered, truth D(x)> over the group."""
    from scipy.optimize import minimize

    from .groups import from_euler

    tag = truth.tag
    # score(x) = Re sum_ell dim <recovered, truth D(x)> = Re sum_ell dim Tr[K_ell D(x)]
    kmats = [recovered[ell].conj().T @ truth[ell] for ell in range(truth.bandlimit + 1)]

    def score_on_rule(rule):
        total = np.zeros(rule.size)
        for ell in range(truth.bandlimit + 1):
            dstack = wigner_stack_on_rule(ell, tag, rule)
            total += dim(ell, tag) * np.einsum("uv,ivu->i", kmats[ell], dstack).real
        return total

    rule = haar_quadrature(max(8, truth.bandlimit), tag)
    best = int(np.argmax(score_on_rule(rule)))
    a0, b0, c0 = rule.node_angles()[best]

    def neg_score(angles):
        a, b, c = angles
        g = from_euler(
            (a % (2 * np.pi), float(np.clip(b, 0.0, np.pi)), c % (4 * np.pi if tag == SU2 else 2 * np.pi)),
            tag,
        )
        s = 0.0
        for ell in range(truth.bandlimit + 1):
            s += dim(ell, tag) * np.trace(kmats[ell] @ wigner_matrix(ell, tag, g)).real
        return -s

    res = minimize(neg_score, np.array([a0, b0, c0]), method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
    a, b, c = res.x
    return from_euler(
        (a % (2 * np.pi), float(np.clip(b, 0.0, np.pi)), c % (4 * np.pi if tag == SU2 else 2 * np.pi)),
        tag,
    )


def _kron_inverse_apply(fa: np.ndarray, fb: np.ndarray, amat: np.ndarray) -> np.ndarray:
    """[fa^-1 (x) fb^-1] amat without forming the Kronecker inverse."""
    da, db = fa.shape[0], fb.shape[0]
    t = amat.reshape(da, db, -1)
    t = np.linalg.solve(fa, t.reshape(da, -1)).reshape(da, db, -1)
    t = np.moveaxis(t, 1, 0)
    t = np.linalg.solve(fb, t.reshape(db, -1)).reshape(db, da, -1)
    return np.moveaxis(t, 0, 1).reshape(da * db, -1)


def _reconstruct(
    desc: BispectrumDescriptor,
    bandlimit: int | None,
    ground_truth: CoefficientSet | None,
    so3_branch: bool,
) -> ReconstructionReport:
    tag = desc.tag
    L = desc.bandlimit if bandlimit is None else bandlimit
    if L > desc.bandlimit:
        raise DomainError("requested bandlimit exceeds the descriptor's")

    a00 = complex(np.asarray(desc[(0, 0)]).ravel()[0])
    if abs(a00) < 1e-300:
        raise ZeroMeanError("A(0,0) = 0: the mean coefficient cannot be recovered")
    f0 = np.cbrt(a00.real)  # real origin: real cube root, sign preserved
    mats = [np.array([[f0 + 0.0j]])]
    conds = {0: 1.0}

    if L >= 1:
        gram = np.asarray(desc[(1, 0)], dtype=complex) / f0
        if so3_branch:
            if desc.det_f1 is None:
                raise MissingSideInfoError("SO3 reconstruction needs det F(1) side information")
            if desc.det_f1 == 0:
                raise MissingSideInfoError("det F(1) side information must be nonzero")
            f1 = signed_sqrt(gram, desc.det_f1)
        else:
            f1 = positive_sqrt(gram)  # det F(1) >= 0 for real origin on SU2
        cond1 = float(np.linalg.cond(f1))
        if cond1 > COND_REJECT:
            raise SingularCoefficientError(1)
        mats.append(f1)
        conds[1] = cond1

    for ell in range(2, L + 1):
        cg = clebsch_gordan(tag, ell - 1, 1)
        a = np.asarray(desc[(ell - 1, 1)], dtype=complex)
        inner = cg.C.conj().T @ _kron_inverse_apply(mats[ell - 1], mats[1], a) @ cg.C
        d = dim(ell, tag)
        f_ell = inner[:d, :d].conj().T
        cond = float(np.linalg.cond(f_ell))
        if not np.isfinite(cond) or cond > COND_REJECT:
            raise SingularCoefficientError(ell)
        mats.append(f_ell)
        conds[ell] = cond

    recovered = CoefficientSet(tag, L, tuple(mats))
    report = ReconstructionReport(recovered, conds)
    if ground_truth is not None:
        report.witness = find_alignment(ground_truth, recovered)
    return report


def reconstruct_su2(
    desc: BispectrumDescriptor,
    bandlimit: int | None = None,
    ground_truth: CoefficientSet | None = None,
) -> ReconstructionReport:
    """Recover a real-origin SU2 coefficient set up to a left translation."""
    if desc.tag != SU2:
        raise TagMismatchError("descriptor is not SU2")
    return _reconstruct(desc, bandlimit, ground_truth, so3_branch=False)


def reconstruct_so3(
    desc: BispectrumDescriptor,
    bandlimit: int | None = None,
    ground_truth: CoefficientSet | None = None,
) -> ReconstructionReport:
    """SO3 variant: the degree-1 square root sign comes from det side info."""
    if desc.tag != SO3:
        raise TagMismatchError("descriptor is not SO3")
    return _reconstruct(desc, bandlimit, ground_truth, so3_branch=True)


def check_sphere_witness(x: GroupElement, samples: int = 16, tol: float = 1e-9) -> bool:
    """Does x normalize the z-axis circle: x R_z(t) x^-1 in H for sampled t?"""
    if x.tag != SO3:
        raise TagMismatchError("sphere witnesses live in SO3")
    r = x.data
    for t in np.linspace(0.0, 2 * np.pi, samples, endpoint=False):
        m = r @ z_rotation(t).data @ r.T
        phi = np.arctan2(m[1, 0], m[0, 0])
        if np.max(np.abs(m - z_rotation(phi).data)) > tol:
            return False
    return True
