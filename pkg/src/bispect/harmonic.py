"""Fourier analysis on SU(2)/SO(3): transforms, translation, generators.

Coefficient convention: F(ell) = integral of f(g) D_ell(g)^dagger dg, so a
left translation f(x g) multiplies each coefficient by D_ell(x) on the
right.  The inverse series is sum_ell c_ell Tr[F(ell) D_ell(g)] with
c_ell = dim(ell).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BispectError, DomainError, PrecisionWarning, TagMismatchError
from .groups import GroupElement, QuadratureRule, haar_quadrature
from .wigner import dim, wigner_matrix, wigner_stack_on_rule


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples of a function at the nodes of a quadrature rule."""

    tag: str
    rule: QuadratureRule
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.rule.size,):
            raise DomainError("value count must equal the rule's node count")
        if self.tag != self.rule.tag:
            raise TagMismatchError("sample tag does not match rule tag")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class CoefficientSet:
    """The family {F(ell)} of Fourier coefficient matrices up to a bandlimit."""

    tag: str
    bandlimit: int
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = []
        for ell, mat in enumerate(self.matrices):
            m = np.asarray(mat, dtype=complex)
            d = dim(ell, self.tag)
            if m.shape != (d, d):
                raise DomainError(f"matrix at degree {ell} must be {d}x{d}, got {m.shape}")
            m.setflags(write=False)
            mats.append(m)
        if len(mats) != self.bandlimit + 1:
            raise DomainError("need one matrix per degree 0..bandlimit")
        object.__setattr__(self, "matrices", tuple(mats))

    def __getitem__(self, ell: int) -> np.ndarray:
        return self.matrices[ell]

    def weight(self, ell: int) -> int:
        return dim(ell, self.tag)

    def norm(self) -> float:
        return float(np.sqrt(sum(np.linalg.norm(m) ** 2 for m in self.matrices)))

    def allclose(self, other: "CoefficientSet", atol: float = 1e-10) -> bool:
        if (self.tag, self.bandlimit) != (other.tag, other.bandlimit):
            return False
        return all(np.allclose(a, b, atol=atol) for a, b in zip(self.matrices, other.matrices))


def coefficient_distance(a: CoefficientSet, b: CoefficientSet) -> float:
    if (a.tag, a.bandlimit) != (b.tag, b.bandlimit):
        raise TagMismatchError("coefficient sets differ in group or bandlimit")
    return float(np.sqrt(sum(np.linalg.norm(x - y) ** 2 for x, y in zip(a.matrices, b.matrices))))


def fourier_forward(f: SampledFunction, bandlimit: int) -> CoefficientSet:
    """F(ell) = sum_i w_i f(g_i) D_ell(g_i)^dagger for ell <= bandlimit.

    Exact when f is bandlimited at ``bandlimit`` and the rule's bandlimit is
    at least twice that; otherwise a PrecisionWarning is issued and the
    result is the quadrature approximation.
    """
    if f.rule.bandlimit < 2 * bandlimit:
        warnings.warn(
            f"rule bandlimit {f.rule.bandlimit} < 2*{bandlimit}; coefficients are approximate",
            PrecisionWarning,
            stacklevel=2,
        )
    w = f.rule.weights
    mats = []
    for ell in range(bandlimit + 1):
        dstack = wigner_stack_on_rule(ell, f.tag, f.rule)
        mats.append(kernels.weighted_projection(w, f.values, dstack))
    return CoefficientSet(f.tag, bandlimit, tuple(mats))


def fourier_inverse(coeffs: CoefficientSet, rule: QuadratureRule | None = None) -> SampledFunction:
    """Evaluate sum_ell dim(ell) Tr[F(ell) D_ell(g_i)] on a rule's nodes."""
    if rule is None:
        rule = haar_quadrature(2 * coeffs.bandlimit, coeffs.tag)
    if rule.tag != coeffs.tag:
        raise TagMismatchError("rule tag does not match coefficient tag")
    out = np.zeros(rule.size, dtype=complex)
    for ell in range(coeffs.bandlimit + 1):
        dstack = wigner_stack_on_rule(ell, coeffs.tag, rule)
        out += coeffs.weight(ell) * kernels.trace_synthesis(coeffs[ell], dstack)
    return SampledFunction(coeffs.tag, rule, out)


def evaluate_at(coeffs: CoefficientSet, elements: list[GroupElement]) -> np.ndarray:
    """Pointwise Fourier series evaluation at arbitrary group elements."""
    out = np.zeros(len(elements), dtype=complex)
    for i, g in enumerate(elements):
        acc = 0.0 + 0.0j
        for ell in range(coeffs.bandlimit + 1):
            acc += coeffs.weight(ell) * np.trace(coeffs[ell] @ wigner_matrix(ell, coeffs.tag, g))
        out[i] = acc
    return out


def translate(coeffs: CoefficientSet, x: GroupElement) -> CoefficientSet:
    """Coefficients of g -> f(x g):  F(ell) -> F(ell) D_ell(x)."""
    if x.tag != coeffs.tag:
        raise TagMismatchError("element tag does not match coefficient tag")
    mats = tuple(coeffs[ell] @ wigner_matrix(ell, coeffs.tag, x) for ell in range(coeffs.bandlimit + 1))
    return CoefficientSet(coeffs.tag, coeffs.bandlimit, mats)


def right_translate(coeffs: CoefficientSet, x: GroupElement) -> CoefficientSet:
    """Coefficients of g -> f(g x):  F(ell) -> D_ell(x) F(ell)."""
    if x.tag != coeffs.tag:
        raise TagMismatchError("element tag does not match coefficient tag")
    mats = tuple(wigner_matrix(ell, coeffs.tag, x) @ coeffs[ell] for ell in range(coeffs.bandlimit + 1))
    return CoefficientSet(coeffs.tag, coeffs.bandlimit, mats)


def quadrature_inner(f: SampledFunction, h: SampledFunction) -> complex:
    """<f, h> = sum_i w_i f_i conj(h_i)."""
    if f.rule is not h.rule and f.rule.bandlimit != h.rule.bandlimit:
        raise DomainError("samples must share a quadrature rule")
    return complex(np.sum(f.rule.weights * f.values * np.conj(h.values)))


def coefficient_inner(a: CoefficientSet, b: CoefficientSet) -> complex:
    """Dimension-weighted trace inner product matching quadrature_inner."""
    if (a.tag, a.bandlimit) != (b.tag, b.bandlimit):
        raise TagMismatchError("coefficient sets differ in group or bandlimit")
    total = 0.0 + 0.0j
    for ell in range(a.bandlimit + 1):
        total += a.weight(ell) * np.sum(a[ell] * np.conj(b[ell]))
    return complex(total)


def max_condition(coeffs: CoefficientSet) -> float:
    return max(float(np.linalg.cond(coeffs[ell])) for ell in range(coeffs.bandlimit + 1))


# condition-number policy: generator keeps drawing until below the target,
# consumers reject outright above the hard ceiling
COND_TARGET = 1e4
COND_REJECT = 1e8


def random_bandlimited(
    bandlimit: int,
    tag: str,
    require_nonsingular: bool = False,
    require_real: bool = False,
    seed: int = 0,
    max_retries: int = 64,
) -> CoefficientSet:
    """Seeded random coefficient set, optionally well-conditioned / real-origin.

    Real origin functions are produced by transforming real white noise on
    the nodes of a bandlimit-matched rule: the discrete transform commutes
    with conjugation, so the coefficient-level reality constraint holds
    exactly (and with it, on SU2, the nonnegative determinant at degree 1).
    """
    rng = np.random.default_rng(seed)
    rule = haar_quadrature(bandlimit, tag) if require_real else None
    for _ in range(max_retries):
        if require_real:
            # scaled so coefficient entries come out O(1/sqrt(dim)), matching
            # the complex branch
            noise = rng.standard_normal(rule.size) * np.sqrt(rule.size)
            samples = SampledFunction(tag, rule, noise.astype(complex))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", PrecisionWarning)
                coeffs = fourier_forward(samples, bandlimit)
        else:
            mats = []
            for ell in range(bandlimit + 1):
                d = dim(ell, tag)
                mats.append((rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2 * d))
            coeffs = CoefficientSet(tag, bandlimit, tuple(mats))
        if not require_nonsingular or max_condition(coeffs) <= COND_TARGET:
            return coeffs
    raise BispectError("could not draw a well-conditioned coefficient set")  # pragma: no cover
