"""Wigner matrices: the irreducible unitary representations of SU(2)/SO(3).

Degrees follow the dimension-based indexing: for SU2 the degree-ell
representation has dimension ell + 1 (spin ell/2), for SO3 dimension
2*ell + 1 (spin ell).  Internally everything is bookkept by the doubled
spin j2 = 2j, so integer and half-integer spins share one code path.
Row and column indices run over m = -j ... +j ascending.

The little-d planes are built by a half-integer-step recursion in the spin
(seeded at spin 0), which stays factorial-free; a direct summation formula
covers small degrees and doubles as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from . import kernels
from .errors import DomainError, TagMismatchError
from .groups import SO3, SU2, GroupElement, QuadratureRule, to_euler


def dim(ell: int, tag: str) -> int:
    if ell < 0:
        raise DomainError("degree must be nonnegative")
    return ell + 1 if tag == SU2 else 2 * ell + 1


def j2_of(ell: int, tag: str) -> int:
    """Doubled spin of the degree-ell representation."""
    return ell if tag == SU2 else 2 * ell


def m_values(ell: int, tag: str) -> np.ndarray:
    """Ascending m grid; half-integers for odd SU2 degrees."""
    j2 = j2_of(ell, tag)
    return (np.arange(j2 + 1) - j2 / 2.0) if j2 % 2 else (np.arange(j2 + 1) - j2 // 2).astype(float)


@dataclass(frozen=True)
class IrrepIndex:
    ell: int
    tag: str

    def __post_init__(self):
        if self.tag not in (SU2, SO3):
            raise TagMismatchError(f"unknown group tag {self.tag!r}")
        if self.ell < 0:
            raise DomainError("degree must be nonnegative")

    @property
    def dim(self) -> int:
        return dim(self.ell, self.tag)


@dataclass(frozen=True)
class WignerMatrix:
    index: IrrepIndex
    entries: np.ndarray


def little_d_direct(j2: int, beta: float) -> np.ndarray:
    """Little-d by Wigner's explicit sum; fine for small spins."""
    n = j2 + 1
    out = np.zeros((n, n))
    c = np.cos(beta / 2.0)
    s = np.sin(beta / 2.0)
    f = factorial
    for i in range(n):  # row, doubled m' = 2*i - j2
        for k in range(n):  # col, doubled m = 2*k - j2
            # integer combinations j +/- m etc., all guaranteed integral
            jpmp, jmmp = i, j2 - i
            jpm, jmm = k, j2 - k
            pref = np.sqrt(float(f(jpmp) * f(jmmp) * f(jpm) * f(jmm)))
            mp_minus_m = i - k
            lo = max(0, -mp_minus_m)
            hi = min(jpm, jmmp)
            acc = 0.0
            for t in range(lo, hi + 1):
                num = (-1.0) ** (mp_minus_m + t)
                cexp = j2 + k - i - 2 * t  # 2j + m - m' - 2t
                sexp = mp_minus_m + 2 * t
                acc += num * c**cexp * s**sexp / (f(jpm - t) * f(t) * f(mp_minus_m + t) * f(jmmp - t))
            out[i, k] = pref * acc
    return out


def little_d_stack(j2max: int, betas: np.ndarray, backend: str | None = None) -> list[np.ndarray]:
    """Planes d^(j2/2)(beta) for j2 = 0..j2max; entry j2 has shape (nb, j2+1, j2+1)."""
    betas = np.atleast_1d(np.asarray(betas, dtype=float))
    c = np.cos(betas / 2.0)
    s = np.sin(betas / 2.0)
    planes = [np.ones((betas.size, 1, 1))]
    for _ in range(j2max):
        planes.append(kernels.half_step(planes[-1], c, s, backend=backend))
    return planes


def little_d(j2: int, beta: float) -> np.ndarray:
    """Single little-d plane; direct summation below spin 1, recursion above."""
    if j2 <= 2:
        return little_d_direct(j2, beta)
    return little_d_stack(j2, np.array([beta]))[j2][0]


def _phase_columns(m: np.ndarray, angle: float) -> np.ndarray:
    return np.exp(-1j * m * angle)


def wigner_matrix(ell: int, tag: str, g: GroupElement) -> np.ndarray:
    """D_ell(g) in the z-y-z convention, unitary, dim x dim."""
    if g.tag != tag:
        raise TagMismatchError(f"element tag {g.tag} does not match {tag}")
    ang = to_euler(g)
    j2 = j2_of(ell, tag)
    d = little_d(j2, ang.beta)
    m = m_values(ell, tag)
    return _phase_columns(m, ang.alpha)[:, None] * d * _phase_columns(m, ang.gamma)[None, :]


def wigner(index: IrrepIndex, g: GroupElement) -> WignerMatrix:
    """Spec-facing wrapper returning the typed matrix."""
    return WignerMatrix(index, wigner_matrix(index.ell, index.tag, g))


def _rule_planes(rule: QuadratureRule, j2max: int) -> list[np.ndarray]:
    cache = rule.__dict__.setdefault("_d_planes", {})
    have = cache.get("j2max", -1)
    if have < j2max:
        cache["planes"] = little_d_stack(j2max, rule.betas)
        cache["j2max"] = j2max
    return cache["planes"]


def wigner_stack_on_rule(ell: int, tag: str, rule: QuadratureRule) -> np.ndarray:
    """D_ell at every rule node, shape (size, dim, dim), product-grid order.

    Built separably: per-beta little-d planes and phase factors over the
    alpha/gamma circles.  Cached per rule and degree.
    """
    if rule.tag != tag:
        raise TagMismatchError("rule tag does not match requested tag")
    stacks = rule.__dict__.setdefault("_wigner_stacks", {})
    if ell in stacks:
        return stacks[ell]
    j2 = j2_of(ell, tag)
    planes = _rule_planes(rule, j2)[j2]  # (nb, d, d)
    m = m_values(ell, tag)
    ea = np.exp(-1j * np.outer(rule.alphas, m))  # (na, d)
    eg = np.exp(-1j * np.outer(rule.gammas, m))  # (ng, d)
    stack = (
        ea[:, None, None, :, None]
        * planes[None, :, None, :, :]
        * eg[None, None, :, None, :]
    ).reshape(rule.size, j2 + 1, j2 + 1)
    stacks[ell] = stack
    return stack


# Fixed unitary relating the SO3 degree-1 matrix to the rotation itself:
# D_1(g) = CARTESIAN_TO_SPHERICAL @ g @ CARTESIAN_TO_SPHERICAL^dagger.
# Rows are the m = -1, 0, +1 spherical components of a Cartesian vector.
CARTESIAN_TO_SPHERICAL = np.array(
    [
        [1.0 / np.sqrt(2.0), 1j / np.sqrt(2.0), 0.0],
        [0.0, 0.0, 1.0],
        [-1.0 / np.sqrt(2.0), 1j / np.sqrt(2.0), 0.0],
    ]
)

# Fixed permutation relating the SU2 degree-1 matrix to the element itself:
# D_1(g) = SWAP @ su2_matrix(g) @ SWAP.
SU2_BASIS_SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
