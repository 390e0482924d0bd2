"""Invariant checks on standard parameter grids, grouped into suites.

Every check returns a :class:`CheckResult` carrying its worst residual and the
threshold it was held to. Checks whose name starts with ``claim:`` test
qualitative statements about the figures (sign of Q, sign and ordering of S1)
rather than identities; they are reported on the same footing.
"""

from __future__ import annotations

import itertools
import math
import time
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import IrrepParams, basis, verify_commutators
from .figures import figure_table
from .measures import LambdaConditionWarning, nbgcs_moment_check, pabgcs_moment_constant
from .nonlinear import (
    nbgcs_eigen_residual,
    pabgcs_eigen_residual,
    pabgcs_two_path_residual,
    shift_identity_check,
)
from .observables import (
    closed_suite,
    display_discrepancies,
    expectation_suite,
    max_relative_error,
)
from .position import (
    bgcs_wavefunction_closed,
    eigenfunctions,
    gauss_grid,
    orthonormality_check,
    wavefunction,
)
from .states import (
    Family,
    StateSpec,
    build_state,
    evolve_check,
    nbgcs,
    nbgcs_overlap_closed,
    overlap,
    pabgcs,
    pabgcs_overlap_closed,
)

LAMBDAS_ALGEBRA = (0.5, 2.5, 4.5)
LAMBDAS = (0.5, 2.5)
M_VALUES = tuple(range(6))
Z_ABS = (0.25, 0.5, 1.0, 2.0, 4.0)
PHASES = (0.0, math.pi / 3)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    threshold: float
    note: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f"  [{self.note}]" if self.note else ""
        return f"{tag}  {self.name}: worst={self.worst:.3e} (limit {self.threshold:.1e}){extra}"


def standard_grid():
    """(family, λ, m, z) over the observable/eigen-relation grid."""
    for lam, m, za, phi in itertools.product(LAMBDAS, M_VALUES, Z_ABS, PHASES):
        z = za * complex(math.cos(phi), math.sin(phi))
        for fam in (Family.NBGCS, Family.PABGCS):
            yield fam, IrrepParams(lam), m, z


def _le(name: str, worst: float, limit: float, note: str = "") -> CheckResult:
    return CheckResult(name, bool(worst <= limit), float(worst), limit, note)


# --- algebra -------------------------------------------------------------------


def check_commutators(cutoff: int = 64) -> CheckResult:
    worst = max(verify_commutators(cutoff, IrrepParams(lam)) for lam in LAMBDAS_ALGEBRA)
    return _le("commutation relations (interior, cutoff 64)", worst, 1e-12)


def check_shift_identities(cutoff: int = 64) -> CheckResult:
    worst = 0.0
    for m, z, lam in itertools.product(range(4), (1.0, 1 + 1j), LAMBDAS):
        worst = max(worst, shift_identity_check(m, z, IrrepParams(lam), cutoff))
    return _le("displacement / Pochhammer shift identities", worst, 1e-10)


# --- states --------------------------------------------------------------------


def check_limits() -> CheckResult:
    worst = 0.0
    for lam, z in itertools.product(LAMBDAS, (0.5, 1 + 1j, 3j)):
        p = IrrepParams(lam)
        ref = nbgcs(StateSpec(Family.BGCS, z, 0, p))
        for fam in (Family.NBGCS, Family.PABGCS):
            v = build_state(StateSpec(fam, z, 0, p))
            k = max(v.cutoff, ref.cutoff)
            worst = max(worst, float(np.max(np.abs(v.padded(k).coeffs - ref.padded(k).coeffs))))
        for m in M_VALUES:
            v = pabgcs(StateSpec(Family.PABGCS, 0, m, p))
            e = basis(m, p, v.cutoff)
            worst = max(worst, float(np.max(np.abs(v.coeffs - e.coeffs))))
    return _le("m = 0 and z = 0 limits (coefficientwise)", worst, 1e-13)


def check_overlaps() -> CheckResult:
    worst = 0.0
    pts = (0.5, 1 + 1j, -1.5 + 0.5j)
    for lam, m1, m2 in itertools.product(LAMBDAS, (0, 2, 5), (0, 1, 3)):
        p = IrrepParams(lam)
        for z1, z2 in itertools.product(pts, pts):
            u = nbgcs(StateSpec(Family.NBGCS, z1, m1, p))
            v = nbgcs(StateSpec(Family.NBGCS, z2, m2, p))
            worst = max(worst, abs(overlap(u, v) - nbgcs_overlap_closed(z1, m1, z2, m2, p)))
            u = pabgcs(StateSpec(Family.PABGCS, z1, m1, p))
            v = pabgcs(StateSpec(Family.PABGCS, z2, m2, p))
            worst = max(worst, abs(overlap(u, v) - pabgcs_overlap_closed(z1, z2, m2, p, m_bra=m1)))
    return _le("overlaps, closed form vs Fock sum", worst, 1e-12)


def check_temporal_stability(seed: int = 0, draws: int = 20) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        m = int(rng.integers(0, 6))
        t = float(rng.uniform(0, 2 * math.pi))
        lam = float(rng.choice(LAMBDAS))
        worst = max(worst, evolve_check(StateSpec(Family.NBGCS, z, m, IrrepParams(lam)), t))
    return _le(f"temporal stability ({draws} seeded draws)", worst, 1e-11, f"seed={seed}")


def check_eigen_relations() -> CheckResult:
    worst = 0.0
    for fam, p, m, z in standard_grid():
        spec = StateSpec(fam, z, m, p)
        r = nbgcs_eigen_residual(spec) if fam is Family.NBGCS else pabgcs_eigen_residual(spec)
        worst = max(worst, r)
    return _le("nonlinear eigen-relations on the standard grid", worst, 1e-11)


def check_two_path() -> CheckResult:
    worst = 0.0
    for lam, m, z in itertools.product(LAMBDAS, range(1, 6), (0.5, 1 + 1j, 2.0)):
        worst = max(worst, pabgcs_two_path_residual(StateSpec(Family.PABGCS, z, m, IrrepParams(lam))))
    return _le("photon-added relation via the raised NBGCS relation", worst, 1e-11)


# --- observables -----------------------------------------------------------------


def check_closed_forms() -> CheckResult:
    worst, where = 0.0, ""
    flagged: set[str] = set()
    for fam, p, m, z in standard_grid():
        oracle = expectation_suite(build_state(StateSpec(fam, z, m, p)))
        field, err = max_relative_error(closed_suite(fam, z, m, p), oracle)
        if err > worst:
            worst, where = err, f"{fam.value} lam={p.lam} m={m} |z|={abs(z):g}: {field}"
        for d in display_discrepancies(fam, z, m, p, oracle):
            flagged.add(f"{fam.value}.{d.name}")
    note = where
    if flagged:
        note += "; face-value forms off: " + ",".join(sorted(flagged))
    return _le("closed-form observables vs Fock sums", worst, 1e-9, note)


def check_uncertainty() -> CheckResult:
    # worst = largest violation of varX1·varX2 ≥ ⟨J₃⟩²/4
    worst = -math.inf
    for fam, p, m, z in standard_grid():
        r = expectation_suite(build_state(StateSpec(fam, z, m, p)))
        worst = max(worst, r.expJ3**2 / 4 - r.varX1 * r.varX2)
    return _le("uncertainty relation varX1*varX2 >= <J3>^2/4", worst, 1e-10)


def check_bgcs_spot() -> CheckResult:
    r = expectation_suite(nbgcs(StateSpec(Family.BGCS, 1.0, 0, IrrepParams(0.5))))
    return _le("BGCS lambda=1/2 |z|=1 Mandel Q = -0.264648", abs(r.mandelQ + 0.264648), 1e-6, f"Q={r.mandelQ:.9f}")


def check_claim_q_negative(points: int = 240) -> CheckResult:
    worst, where = -math.inf, ""
    for fig in (2, 4):
        t = figure_table(fig, points=points)
        for col in t.columns[1:]:
            y = t.column(col)
            i = int(np.argmax(y))
            if y[i] > worst:
                worst, where = float(y[i]), f"fig {fig} {col} at |z|={t.rows[i][0]:.4g}"
    return CheckResult("claim: Mandel Q < 0 on all figure 2/4 samples", worst < 0, worst, 0.0, "max Q " + where)


def check_claim_s1(points: int = 240) -> list[CheckResult]:
    out = []
    worst, where, zero_dev = -math.inf, "", 0.0
    tables = {fig: figure_table(fig, points=points) for fig in (3, 5)}
    for fig, t in tables.items():
        zero_dev = max(zero_dev, float(np.max(np.abs(t.column("S1_m0")))))
        for m in range(1, 6):
            y = t.column(f"S1_m{m}")
            i = int(np.argmax(y))
            if y[i] > worst:
                worst, where = float(y[i]), f"fig {fig} m={m} at |z|={t.rows[i][0]:.4g}"
    out.append(CheckResult("claim: S1 < 0 for m=1..5 on figure 3/5 samples", worst < 0, worst, 0.0, "max S1 " + where))
    out.append(_le("S1 for m=0 identically zero (figures 3/5)", zero_dev, 1e-10))
    # monotone deepening: S1(m+1) < S1(m) at |z| = 1, 2, 3
    bad = []
    for fig in (3, 5):
        for za in (1.0, 2.0, 3.0):
            fam = Family.NBGCS if fig == 3 else Family.PABGCS
            phi = math.pi / 3 if fig == 3 else 0.0
            s = [
                expectation_suite(
                    build_state(StateSpec(fam, za * complex(math.cos(phi), math.sin(phi)), m, IrrepParams(0.5)))
                ).S1
                for m in range(1, 6)
            ]
            steps = np.diff(s)
            if np.any(steps >= 0):
                bad.append(f"fig{fig}|z|={za:g}")
    out.append(
        CheckResult(
            "claim: S1 deepens monotonically with m at |z| in {1,2,3}",
            not bad,
            float(len(bad)),
            0.0,
            "non-monotone: " + ",".join(bad) if bad else "",
        )
    )
    return out


# --- measures ----------------------------------------------------------------------


def check_nbgcs_measure() -> CheckResult:
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LambdaConditionWarning)
        for lam, m, n in itertools.product(LAMBDAS_ALGEBRA, M_VALUES, range(51)):
            worst = max(worst, abs(nbgcs_moment_check(n, m, IrrepParams(lam)).ratio - 1))
    return _le("NBGCS measure moment ratio = 1 (n<=50, m<=5)", worst, 1e-12, f"ratio=1{worst:+.1e}")


def check_pabgcs_measure() -> CheckResult:
    worst, consts = 0.0, set()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LambdaConditionWarning)
        for lam, m in itertools.product(LAMBDAS_ALGEBRA, M_VALUES):
            r0, spread = pabgcs_moment_constant(m, IrrepParams(lam))
            worst = max(worst, spread)
            consts.add(f"{r0:.12g}")
    return _le(
        "PABGCS measure moment ratio constant in n", worst, 1e-12, "constant(s)=" + ",".join(sorted(consts))
    )


# --- position ------------------------------------------------------------------------


def check_orthonormality() -> CheckResult:
    worst = 0.0
    for lam in LAMBDAS:
        p = IrrepParams(lam)
        g = gauss_grid(p)
        psi = eigenfunctions(g.points, 20, p)
        gram = (psi * g.weights) @ psi.T
        worst = max(worst, float(np.max(np.abs(gram - np.eye(21)))))
    # spot the helper too
    worst = max(worst, abs(orthonormality_check(20, 20, IrrepParams(0.5)) - 1))
    return _le("orthonormality of position eigenfunctions (n,n'<=20)", worst, 1e-8)


def check_parseval() -> CheckResult:
    worst = 0.0
    for lam, (fam, m), z in itertools.product(
        LAMBDAS, ((Family.NBGCS, 0), (Family.NBGCS, 3), (Family.PABGCS, 2)), (0.5, 1 + 1j, 2.0)
    ):
        p = IrrepParams(lam)
        v = build_state(StateSpec(fam, z, m, p))
        g = gauss_grid(p, order=max(96, v.cutoff + 8))
        psi = wavefunction(g.points, v)
        worst = max(worst, abs(float(g.integrate(np.abs(psi) ** 2)) - v.norm2()))
    return _le("Parseval: position norm vs Fock norm", worst, 1e-7)


def check_bgcs_wavefunction() -> CheckResult:
    worst = 0.0
    p = IrrepParams(0.5)
    xs = np.linspace(0.05, 5.0, 60)
    for z in (0.5, 1.0, 2.0):
        a = np.abs(bgcs_wavefunction_closed(xs, z, p))
        b = np.abs(wavefunction(xs, nbgcs(StateSpec(Family.BGCS, z, 0, p))))
        worst = max(worst, float(np.max(np.abs(a - b))))
    return _le("m=0 closed-form wavefunction modulus", worst, 1e-8)


# --- suites ----------------------------------------------------------------------------


SUITES = ("algebra", "states", "observables", "measures", "position")


def run_suite(name: str, seed: int = 0) -> list[CheckResult]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, seed)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    jobs: list[Callable[[], CheckResult | list[CheckResult]]]
    if name == "algebra":
        jobs = [check_commutators, check_shift_identities]
    elif name == "states":
        jobs = [
            check_limits,
            check_overlaps,
            lambda: check_temporal_stability(seed),
            check_eigen_relations,
            check_two_path,
        ]
    elif name == "observables":
        jobs = [check_closed_forms, check_uncertainty, check_bgcs_spot, check_claim_q_negative, check_claim_s1]
    elif name == "measures":
        jobs = [check_nbgcs_measure, check_pabgcs_measure]
    else:
        jobs = [check_orthonormality, check_parseval, check_bgcs_wavefunction]
    out: list[CheckResult] = []
    for job in jobs:
        t0 = time.perf_counter()
        res = job()
        dt = time.perf_counter() - t0
        for r in res if isinstance(res, list) else [res]:
            out.append(CheckResult(r.name, r.passed, r.worst, r.threshold, r.note, dt))
    return out
