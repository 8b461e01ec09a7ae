"""Acceptance criteria, one test per criterion, pinned tolerances.

Each test prints a single PASS/FAIL line (visible with pytest -s) with the
measured residual and, where applicable, the elapsed time against the
stated budget.
"""

import time

from bispect import verify


def _report(number: int, title: str, ok: bool, detail: str):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}")


def _run(name: str, seed: int = 0):
    t0 = time.perf_counter()
    rep = verify.run([name], seed=seed)
    return rep.suites[name], time.perf_counter() - t0


def test_criterion_1_clebsch_gordan_correctness():
    checks, elapsed = _run("cg")
    by_name = {c.name: c for c in checks}
    ok = (
        by_name["index-lists"].passed
        and by_name["su2-intertwiner"].passed
        and by_name["so3-intertwiner"].passed
        and elapsed <= 30.0
    )
    _report(
        1,
        "Clebsch-Gordan correctness",
        ok,
        f"su2 residual {by_name['su2-intertwiner'].residual:.3e}, "
        f"so3 residual {by_name['so3-intertwiner'].residual:.3e} (tol 1e-10), "
        f"{elapsed:.1f}s of 30s budget",
    )
    assert by_name["index-lists"].passed
    assert by_name["su2-intertwiner"].residual <= 1e-10
    assert by_name["so3-intertwiner"].residual <= 1e-10
    assert elapsed <= 30.0


def test_criterion_2_transform_round_trip():
    checks, elapsed = _run("transform")
    by_name = {c.name: c for c in checks}
    coeff_worst = max(by_name[f"{t}-coefficient-round-trip"].residual for t in ("SU2", "SO3"))
    sample_worst = max(by_name[f"{t}-sample-round-trip"].residual for t in ("SU2", "SO3"))
    ok = coeff_worst <= 1e-10 and sample_worst <= 1e-9 and elapsed <= 10.0
    _report(
        2,
        "transform round-trip",
        ok,
        f"coefficients {coeff_worst:.3e} (tol 1e-10), samples {sample_worst:.3e} (tol 1e-9), "
        f"{elapsed:.1f}s of 10s budget",
    )
    assert coeff_worst <= 1e-10
    assert sample_worst <= 1e-9
    assert elapsed <= 10.0


def test_criterion_3_schur_orthogonality():
    checks, _ = _run("quadrature")
    by_name = {c.name: c for c in checks}
    worst = max(by_name[f"{t}-schur-orthogonality"].residual for t in ("SU2", "SO3"))
    ok = worst <= 1e-10
    _report(3, "Schur orthogonality oracle", ok, f"residual {worst:.3e} (tol 1e-10), indices <= 4")
    assert worst <= 1e-10


def test_criterion_4_bispectrum_translation_invariance():
    checks, _ = _run("bispectrum")
    by_name = {c.name: c for c in checks}
    worst = max(by_name[f"{t}-translation-invariance"].residual for t in ("SU2", "SO3"))
    det = by_name["so3-det-side-info-invariance"].residual
    ok = worst <= 1e-9 and det <= 1e-10
    _report(
        4,
        "bispectrum translation invariance",
        ok,
        f"entries {worst:.3e} rel (tol 1e-9), det side info {det:.3e} (tol 1e-10), 20 pairs at L=4",
    )
    assert worst <= 1e-9
    assert det <= 1e-10


def test_criterion_5_oracle_equivalence():
    checks, elapsed = _run("oracle")
    by_name = {c.name: c for c in checks}
    worst = max(by_name[f"{t}-oracle-vs-formula"].residual for t in ("SU2", "SO3"))
    ok = worst <= 1e-6 and elapsed <= 300.0
    _report(
        5,
        "oracle equivalence",
        ok,
        f"relative gap {worst:.3e} (tol 1e-6), 3 seeded functions per group at L=2, "
        f"{elapsed:.1f}s of 300s budget",
    )
    assert worst <= 1e-6
    assert elapsed <= 300.0


def test_criterion_6_su2_reconstruction():
    checks, elapsed = _run("reconstruct-su2")
    by_name = {c.name: c for c in checks}
    ok = (
        by_name["alignment-residual"].residual <= 1e-7
        and by_name["descriptor-round-trip"].residual <= 1e-7
        and elapsed <= 60.0
    )
    _report(
        6,
        "SU(2) reconstruction",
        ok,
        f"alignment {by_name['alignment-residual'].residual:.3e}, "
        f"descriptor {by_name['descriptor-round-trip'].residual:.3e} (tol 1e-7), "
        f"20 seeds at L=4, {elapsed:.1f}s of 60s budget",
    )
    assert by_name["alignment-residual"].residual <= 1e-7
    assert by_name["descriptor-round-trip"].residual <= 1e-7
    assert elapsed <= 60.0


def test_criterion_7_so3_reconstruction_with_side_info():
    checks, elapsed = _run("reconstruct-so3")
    by_name = {c.name: c for c in checks}
    ok = (
        by_name["alignment-residual"].residual <= 1e-7
        and by_name["descriptor-round-trip"].residual <= 1e-7
        and by_name["negative-det-branch"].passed
        and by_name["missing-side-info-error"].passed
    )
    _report(
        7,
        "SO(3) reconstruction with det side info",
        ok,
        f"alignment {by_name['alignment-residual'].residual:.3e}, "
        f"descriptor {by_name['descriptor-round-trip'].residual:.3e} (tol 1e-7), "
        f"negative branch residual {by_name['negative-det-branch'].residual:.3e}",
    )
    assert by_name["alignment-residual"].residual <= 1e-7
    assert by_name["descriptor-round-trip"].residual <= 1e-7
    assert by_name["negative-det-branch"].passed
    assert by_name["missing-side-info-error"].passed
    assert elapsed <= 60.0


def test_criterion_8_reality_constraint():
    checks, _ = _run("reality")
    check = checks[0]
    _report(
        8,
        "reality constraint",
        check.passed,
        f"min det F(1) = {-check.residual:.3e} >= -1e-12, 100 seeded real functions",
    )
    assert check.passed


def test_criterion_9_invariant_matching_demo():
    checks, elapsed = _run("matching")
    by_name = {c.name: c for c in checks}
    ok = by_name["rank-1-accuracy"].passed and by_name["separation-ratio"].passed and elapsed <= 120.0
    _report(
        9,
        "invariant matching demo",
        ok,
        f"{by_name['rank-1-accuracy'].info}; ratio {by_name['separation-ratio'].residual:.3f} "
        f"({by_name['separation-ratio'].info}); {elapsed:.1f}s of 120s budget",
    )
    assert by_name["rank-1-accuracy"].passed
    assert by_name["separation-ratio"].residual < 0.5
    assert elapsed <= 120.0


def test_criterion_10_projection_suite():
    checks, _ = _run("projections")
    by_name = {c.name: c for c in checks}
    ok = (
        by_name["so3-projection-idempotent-hermitian"].residual <= 1e-11
        and by_name["so3-projection-rank-1"].passed
        and by_name["projection-tensor-identity"].residual <= 1e-10
        and by_name["projected-rows-h-invariance"].residual <= 1e-10
    )
    _report(
        10,
        "projection suite",
        ok,
        f"idempotent/hermitian {by_name['so3-projection-idempotent-hermitian'].residual:.3e} (tol 1e-11), "
        f"tensor identity {by_name['projection-tensor-identity'].residual:.3e}, "
        f"row invariance {by_name['projected-rows-h-invariance'].residual:.3e} (tol 1e-10)",
    )
    assert by_name["so3-projection-idempotent-hermitian"].residual <= 1e-11
    assert by_name["so3-projection-rank-1"].passed
    assert by_name["projection-tensor-identity"].residual <= 1e-10
    assert by_name["projected-rows-h-invariance"].residual <= 1e-10


def test_criterion_11_coset_homomorphism_conditions():
    checks, _ = _run("coset")
    by_name = {c.name: c for c in checks}
    ok = by_name["coset-conditions-so3"].residual <= 1e-10 and by_name["coset-negative-control"].passed
    _report(
        11,
        "coset homomorphism conditions",
        ok,
        f"residual {by_name['coset-conditions-so3'].residual:.3e} (tol 1e-10) over 20 cosets at L=3; "
        f"corrupted control residual {by_name['coset-negative-control'].residual:.3e} > 1e-3",
    )
    assert by_name["coset-conditions-so3"].residual <= 1e-10
    assert by_name["coset-negative-control"].passed


def test_criterion_12_support_closure():
    checks, _ = _run("closure")
    by_name = {c.name: c for c in checks}
    ok = by_name["su2-even-support-closed"].passed and by_name["su2-01-support-witness"].passed
    _report(
        12,
        "support closure check",
        ok,
        f"{{0,2,4}} closed; {{0,1}} not closed with {by_name['su2-01-support-witness'].info}",
    )
    assert by_name["su2-even-support-closed"].passed
    assert by_name["su2-01-support-witness"].passed
