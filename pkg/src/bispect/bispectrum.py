"""Triple correlation and its Fourier transform, the matrix bispectrum.

The descriptor entry at (p, q) is

    A(p, q) = [F(p) (x) F(q)] C_pq [F(a_1)^+ dsum ... dsum F(a_k)^+] C_pq^+

with the a_i the tensor-product decomposition degrees; degrees beyond the
bandlimit contribute zero blocks.  A brute-force double-quadrature of the
triple correlation against Wigner matrices serves as the independent
oracle for the formula at small bandlimits.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, PrecisionWarning, TagMismatchError
from .groups import SU2, GroupElement, QuadratureRule, haar_quadrature
from .harmonic import (
    CoefficientSet,
    SampledFunction,
    fourier_forward,
    fourier_inverse,
    right_translate,
)
from .clebsch import clebsch_gordan, direct_sum
from .wigner import dim, wigner_stack_on_rule


def bispectrum_matrix(coeffs: CoefficientSet, p: int, q: int) -> np.ndarray:
    """A(p, q) by the matrix formula; out-of-band degrees are zero blocks."""
    if p > coeffs.bandlimit or q > coeffs.bandlimit:
        raise DomainError("p and q must not exceed the bandlimit")
    cg = clebsch_gordan(coeffs.tag, p, q)
    blocks = []
    for a in cg.indices:
        if a <= coeffs.bandlimit:
            blocks.append(coeffs[a].conj().T)
        else:
            d = dim(a, coeffs.tag)
            blocks.append(np.zeros((d, d), dtype=complex))
    middle = cg.C @ direct_sum(blocks) @ cg.C.conj().T
    return np.kron(coeffs[p], coeffs[q]) @ middle


@dataclass(frozen=True)
class BispectrumDescriptor:
    """All A(p, q) for p, q <= bandlimit, plus optional det side information."""

    tag: str
    bandlimit: int
    entries: dict[tuple[int, int], np.ndarray]
    det_f1: float | None = None

    def __getitem__(self, pq: tuple[int, int]) -> np.ndarray:
        return self.entries[pq]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.entries.keys())


def build_descriptor(coeffs: CoefficientSet) -> BispectrumDescriptor:
    """Assemble the full descriptor; SO3 sets with a (near-)real det F(1)
    store it as side information for the reconstruction sign branch."""
    entries = {}
    for p in range(coeffs.bandlimit + 1):
        for q in range(coeffs.bandlimit + 1):
            entries[(p, q)] = bispectrum_matrix(coeffs, p, q)
    det_f1 = None
    if coeffs.tag != SU2 and coeffs.bandlimit >= 1:
        det = complex(np.linalg.det(coeffs[1]))
        if abs(det.imag) <= 1e-8 * max(1.0, abs(det.real)):
            det_f1 = float(det.real)
    return BispectrumDescriptor(coeffs.tag, coeffs.bandlimit, entries, det_f1)


def descriptor_distance(d1: BispectrumDescriptor, d2: BispectrumDescriptor) -> float:
    """Dimension-weighted Frobenius distance; zero iff entrywise equal."""
    if (d1.tag, d1.bandlimit) != (d2.tag, d2.bandlimit):
        raise TagMismatchError("descriptors differ in group or bandlimit")
    if d1.pairs() != d2.pairs():
        raise DomainError("descriptors carry different entry sets")
    total = 0.0
    for p, q in d1.pairs():
        a, b = d1[(p, q)], d2[(p, q)]
        if a.shape != b.shape:
            raise DomainError(f"entry ({p},{q}) shapes differ")
        total += dim(p, d1.tag) * dim(q, d1.tag) * float(np.linalg.norm(a - b) ** 2)
    return float(np.sqrt(total))


def descriptor_max_relative_gap(d1: BispectrumDescriptor, d2: BispectrumDescriptor) -> float:
    """Worst per-entry Frobenius gap relative to the first descriptor's scale."""
    gap = 0.0
    for pq in d1.pairs():
        denom = max(float(np.linalg.norm(d1[pq])), 1e-300)
        gap = max(gap, float(np.linalg.norm(d1[pq] - d2[pq])) / denom)
    return gap


# ---------------------------------------------------------------------------
# Triple correlation (the brute-force side of the dual route)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TripleCorrelationGrid:
    """a3(g_i, g_j) tabulated on the square of a quadrature rule's nodes."""

    tag: str
    rule: QuadratureRule
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.rule.size, self.rule.size):
            raise DomainError("grid must be square over the rule's nodes")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def _translated_samples(
    coeffs: CoefficientSet, shifts: list[GroupElement], rule: QuadratureRule
) -> np.ndarray:
    """Rows u[j, i] = f(g_i x_j), via right-translated coefficient synthesis."""
    rows = []
    for x in shifts:
        rows.append(fourier_inverse(right_translate(coeffs, x), rule).values)
    return np.array(rows)


def triple_correlation(
    f: SampledFunction, g1: GroupElement, g2: GroupElement, bandlimit: int
) -> complex:
    """a3(g1, g2) = sum_i w_i conj(f_i) f(g_i g1) f(g_i g2).

    Off-node evaluations go through the bandlimited synthesis, which is
    exact when f is bandlimited at ``bandlimit`` and its rule is exact for
    triple products (rule bandlimit >= 3 * bandlimit).
    """
    if f.rule.bandlimit < 3 * bandlimit:
        warnings.warn(
            f"rule bandlimit {f.rule.bandlimit} < 3*{bandlimit}; triple correlation approximate",
            PrecisionWarning,
            stacklevel=2,
        )
    coeffs = fourier_forward(f, bandlimit)
    u = _translated_samples(coeffs, [g1, g2], f.rule)
    return complex(np.sum(f.rule.weights * np.conj(f.values) * u[0] * u[1]))


def triple_correlation_grid(
    f: SampledFunction, bandlimit: int, outer_rule: QuadratureRule | None = None
) -> TripleCorrelationGrid:
    """Tabulate a3 on the product of an outer rule's nodes with itself."""
    if outer_rule is None:
        outer_rule = haar_quadrature(bandlimit, f.tag)
    coeffs = fourier_forward(f, bandlimit)
    u = _translated_samples(coeffs, outer_rule.nodes, f.rule)
    wf = f.rule.weights * np.conj(f.values)
    return TripleCorrelationGrid(f.tag, outer_rule, kernels.triple_grid(wf, u))


def bispectrum_via_oracle(f: SampledFunction, p: int, q: int, bandlimit: int) -> np.ndarray:
    """A(p, q) by the defining double integral of the triple correlation.

    Independent of the matrix formula (no Clebsch-Gordan data); meant for
    small bandlimits only.
    """
    outer = haar_quadrature(bandlimit, f.tag)
    a3 = triple_correlation_grid(f, bandlimit, outer).values
    dp = wigner_stack_on_rule(p, f.tag, outer)
    dq = wigner_stack_on_rule(q, f.tag, outer)
    w = outer.weights
    # sum_{a,b} w_a w_b a3[a,b]  D_p(g_a)^+ (x) D_q(g_b)^+
    left = np.einsum("a,b,ab,aij->bij", w, w, a3, np.conj(dp.transpose(0, 2, 1)), optimize=True)
    return np.einsum("bij,bkl->ikjl", left, np.conj(dq.transpose(0, 2, 1)), optimize=True).reshape(
        dim(p, f.tag) * dim(q, f.tag), -1
    )


# ---------------------------------------------------------------------------
# Support closure (the dual-side hypothesis of the completeness theorem)
# ---------------------------------------------------------------------------


@dataclass
class ClosureReport:
    closed: bool
    witness: tuple[int, int, int] | None = None  # (p, q, missing degree)
    conjugation_self_dual: dict[int, float] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.closed


def support_closure_check(support: set[int], tag: str, check_conjugation: bool = False) -> ClosureReport:
    """Is the degree set closed under tensor-product decomposition?

    A finite support stands for the window of an infinite degree set, so a
    missing decomposition degree is only a violation when it falls inside
    the window, taken as one dual-index step past the support's maximum:
    the even SU2 set {0, 2, 4} is closed (6 lies beyond its window), while
    {0, 1} is not (2 falls inside and is absent).

    Every SU2/SO3 irreducible is equivalent to its conjugate (degree map
    ell -> ell), so conjugation closure is automatic; with
    ``check_conjugation`` the self-duality is re-verified numerically for
    small degrees and the similarity defect recorded in the report.
    """
    from .clebsch import cg_indices  # local import keeps module load light

    support = set(int(x) for x in support)
    if 0 not in support:
        raise DomainError("support must contain degree 0 (the trivial representation)")
    window = max(support) + 1
    witness = None
    for p in sorted(support):
        for q in sorted(support):
            for a in cg_indices(tag, p, q):
                if a <= window and a not in support:
                    witness = (p, q, a)
                    break
            if witness:
                break
        if witness:
            break
    report = ClosureReport(witness is None, witness)
    if check_conjugation:
        report.conjugation_self_dual = {
            ell: _conjugation_similarity_defect(tag, ell) for ell in range(min(max(support), 4) + 1)
        }
    return report


def _conjugation_similarity_defect(tag: str, ell: int) -> float:
    """How far conj(D_ell) is from being unitarily similar to D_ell (0 = similar)."""
    rule = haar_quadrature(ell, tag)
    dstack = wigner_stack_on_rule(ell, tag, rule)
    rng = np.random.default_rng(ell + 17)
    d = dim(ell, tag)
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    # T = dim * integral conj(D) X D^+ intertwines conj(D) with D; by Schur it
    # is a multiple of the similarity when the two are equivalent
    t = d * np.einsum("n,nij,jk,nlk->il", rule.weights, np.conj(dstack), x, np.conj(dstack), optimize=True)
    svals = np.linalg.svd(t, compute_uv=False)
    if svals[0] < 1e-12:
        return 1.0
    return float((svals[0] - svals[-1]) / svals[0])
