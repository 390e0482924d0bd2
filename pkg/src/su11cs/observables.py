"""Photon statistics and su(1,1) squeezing.

Two independent routes to the same moments:

* ``expectation_suite`` sums directly over Fock coefficients (ground truth);
* ``nbgcs_closed_suite`` / ``pabgcs_closed_suite`` evaluate hypergeometric
  ratio formulas.

Derived quantities (g2, Mandel Q, quadrature variances, squeezing factors) are
computed from the moments by one shared routine, so any disagreement between
the routes lives in the moments themselves.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .algebra import FockVector, IrrepParams, lower_coefficients, raise_coefficients
from .special import hyp
from .states import Family

J3_FLOOR = 1e-14


@dataclass(frozen=True)
class ObservableReport:
    expN: float
    expN2: float
    expJp: complex
    expJm: complex
    expJp2: complex
    expJm2: complex
    expJpJm: float
    expJ3: float
    varX1: float
    varX2: float
    g2: float
    mandelQ: float
    S1: float
    S2: float

    def as_dict(self) -> dict:
        return asdict(self)


REPORT_FIELDS = tuple(f.name for f in fields(ObservableReport))


def _derive(expN, expN2, expJp, expJp2, expJpJm, expJ3) -> ObservableReport:
    expJm = complex(expJp).conjugate()
    expJm2 = complex(expJp2).conjugate()
    # X1 = (J₊+J₋)/2, X2 = (J₋−J₊)/(2i)
    mean_x1 = (expJp + expJm).real / 2
    mean_x2 = ((expJm - expJp) / 2j).real
    x1_sq = (2 * expJpJm + 2 * expJ3 + (expJp2 + expJm2).real) / 4
    x2_sq = (2 * expJpJm + 2 * expJ3 - (expJp2 + expJm2).real) / 4
    var1 = x1_sq - mean_x1**2
    var2 = x2_sq - mean_x2**2
    if expN > 0:
        g2 = (expN2 - expN) / expN**2
        q = expN * (g2 - 1)
    else:
        g2 = q = math.nan
    if abs(expJ3) < J3_FLOOR:
        s1 = s2 = math.nan
    else:
        s1 = 2 * var1 / abs(expJ3) - 1
        s2 = 2 * var2 / abs(expJ3) - 1
    return ObservableReport(
        expN=float(expN),
        expN2=float(expN2),
        expJp=complex(expJp),
        expJm=expJm,
        expJp2=complex(expJp2),
        expJm2=expJm2,
        expJpJm=float(expJpJm),
        expJ3=float(expJ3),
        varX1=float(var1),
        varX2=float(var2),
        g2=float(g2),
        mandelQ=float(q),
        S1=float(s1),
        S2=float(s2),
    )


def expectation_suite(v: FockVector) -> ObservableReport:
    """All moments by explicit sums over the Fock coefficients of ``v``."""
    c = v.coeffs
    N = v.cutoff
    n = np.arange(N + 1)
    p = np.abs(c) ** 2
    r = raise_coefficients(v.params, N)  # J₊ e_n = r[n] e_{n+1}
    l = lower_coefficients(v.params, N)  # J₋ e_n = l[n] e_{n−1}
    exp_jp = np.vdot(c[1:], r[:-1] * c[:-1])
    exp_jp2 = np.vdot(c[2:], r[1:-1] * r[:-2] * c[:-2]) if N >= 2 else 0j
    exp_jpjm = math.fsum(l**2 * p)
    exp_n = math.fsum(n * p)
    exp_n2 = math.fsum(n * n * p)
    exp_j3 = math.fsum((n + v.params.bargmann_shift) * p)
    return _derive(exp_n, exp_n2, complex(exp_jp), complex(exp_jp2), exp_jpjm, exp_j3)


def _nbgcs_moments(z: complex, m: int, params: IrrepParams) -> dict:
    a, b = params.alpha, params.alpha + m
    x = abs(z) ** 2
    zc = complex(z).conjugate()
    norm = hyp([a], [b, b], x)
    exp_n = x * a / b**2 * hyp([a + 1], [b + 1, b + 1], x) / norm
    # factorial moment ⟨N(N−1)⟩
    fact2 = x**2 * a * (a + 1) / (b * (b + 1)) ** 2 * hyp([a + 2], [b + 2, b + 2], x) / norm
    exp_jp = zc * (a / b) * hyp([a + 1], [b + 1, b], x) / norm
    exp_jp2 = zc**2 * a * (a + 1) / (b * (b + 1)) * hyp([a + 2], [b + 2, b], x) / norm
    exp_jpjm = x * (a / b) ** 2 * hyp([a + 1, a + 1], [a, b + 1, b + 1], x) / norm
    return dict(
        expN=exp_n,
        factorial2=fact2,
        expJp=exp_jp,
        expJp2=exp_jp2,
        expJpJm=exp_jpjm,
        expJ3=exp_n + params.bargmann_shift,
    )


def nbgcs_closed_suite(z: complex, m: int, params: IrrepParams) -> ObservableReport:
    """Closed-form observables of the NBGCS (BGCS for m = 0).

    The 1F2([λ+5/2]; [λ+5/2+m]²) ratio is the factorial moment ⟨N(N−1)⟩, so
    ⟨N²⟩ is that ratio plus ⟨N⟩.
    """
    mo = _nbgcs_moments(z, m, params)
    return _derive(
        mo["expN"], mo["factorial2"] + mo["expN"], mo["expJp"], mo["expJp2"], mo["expJpJm"], mo["expJ3"]
    )


def _pabgcs_moments(z: complex, m: int, params: IrrepParams) -> dict:
    if m < 1:
        raise ValueError("PABGCS closed forms need m >= 1")
    b = params.alpha + m
    x = abs(z) ** 2
    zc = complex(z).conjugate()
    norm = hyp([m + 1], [1, b], x)
    exp_n = m * hyp([m + 1, m + 1], [1, m, b], x) / norm
    exp_n2 = m**2 * hyp([m + 1] * 3, [1, m, m, b], x) / norm
    exp_jp = zc * (m + 1) * hyp([m + 2], [2, b], x) / norm
    exp_jp2 = zc**2 * (m + 1) * (m + 2) / 2 * hyp([m + 3], [3, b], x) / norm
    # read as 2F3 with lower parameters [1, m, λ−1/2+m]
    exp_jpjm = m * (b - 1) * hyp([m + 1, m + 1], [1, m, b - 1], x) / norm
    return dict(
        expN=exp_n,
        expN2=exp_n2,
        expJp=exp_jp,
        expJp2=exp_jp2,
        expJpJm=exp_jpjm,
        expJ3=exp_n + params.bargmann_shift,
    )


def pabgcs_closed_suite(z: complex, m: int, params: IrrepParams) -> ObservableReport:
    """Closed-form observables of the PABGCS; m = 0 routes to the BGCS forms."""
    if m == 0:
        return nbgcs_closed_suite(z, 0, params)
    mo = _pabgcs_moments(z, m, params)
    rep = _derive(mo["expN"], mo["expN2"], mo["expJp"], mo["expJp2"], mo["expJpJm"], mo["expJ3"])
    return rep


def pabgcs_mandel_q(z: complex, m: int, params: IrrepParams) -> float:
    """Q = (⟨N²⟩ − ⟨N⟩²)/⟨N⟩ − 1 straight from the 2F3/3F4 ratios."""
    if m == 0:
        return nbgcs_closed_suite(z, 0, params).mandelQ
    mo = _pabgcs_moments(z, m, params)
    return (mo["expN2"] - mo["expN"] ** 2) / mo["expN"] - 1


def closed_suite(family: Family, z: complex, m: int, params: IrrepParams) -> ObservableReport:
    if Family(family) is Family.PABGCS:
        return pabgcs_closed_suite(z, m, params)
    return nbgcs_closed_suite(z, m, params)


# --- discrepancy reporting ---------------------------------------------------

# S1/S2 are offsets from −1..∞ and can sit at 0 exactly (BGCS); compare them on
# an absolute scale of 1. Everything else is compared relatively.
_FIELD_SCALE = {"S1": 1.0, "S2": 1.0}


def relative_error(name: str, a, b) -> float:
    a, b = complex(a), complex(b)
    if math.isnan(a.real) and math.isnan(b.real):
        return 0.0
    scale = max(abs(a), abs(b), _FIELD_SCALE.get(name, 0.0))
    return 0.0 if scale == 0 else abs(a - b) / scale


@dataclass(frozen=True)
class FormulaDiscrepancy:
    name: str
    closed: complex
    oracle: complex
    rel_err: float


def compare_reports(
    closed: ObservableReport, oracle: ObservableReport, rtol: float = 1e-6
) -> list[FormulaDiscrepancy]:
    """Entries of ``closed`` that differ from ``oracle`` by more than ``rtol``."""
    out = []
    for name in REPORT_FIELDS:
        a, b = getattr(closed, name), getattr(oracle, name)
        err = relative_error(name, a, b)
        if err > rtol:
            out.append(FormulaDiscrepancy(name, complex(a), complex(b), err))
    return out


def max_relative_error(closed: ObservableReport, oracle: ObservableReport) -> tuple[str, float]:
    worst = max(REPORT_FIELDS, key=lambda f: relative_error(f, getattr(closed, f), getattr(oracle, f)))
    return worst, relative_error(worst, getattr(closed, worst), getattr(oracle, worst))


def raw_display_values(family: Family, z: complex, m: int, params: IrrepParams) -> dict:
    """Closed-form expressions taken at face value, before any reinterpretation.

    * NBGCS ``expN2``: the bare 1F2([λ+5/2]) ratio (actually ⟨N(N−1)⟩).
    * PABGCS ``expJpJm``: the 2F3([m+1,m+1]; [1, m, λ−1/2+m]) ratio.
    * ``varX2``: (2⟨J₊J₋⟩ + 2⟨J₃⟩ − ⟨J₊²+J₋²⟩ − ⟨J₋−J₊⟩²)/4, i.e. with the
      same sign on the squared mean as the X1 expression.
    """
    family = Family(family)
    if family is Family.PABGCS and m > 0:
        mo = _pabgcs_moments(z, m, params)
        n2 = mo["expN2"]
    else:
        mo = _nbgcs_moments(z, m, params)
        n2 = mo["factorial2"]
    jp, jp2 = mo["expJp"], mo["expJp2"]
    jm, jm2 = jp.conjugate(), jp2.conjugate()
    var2 = (2 * mo["expJpJm"] + 2 * mo["expJ3"] - (jp2 + jm2) - (jm - jp) ** 2) / 4
    return {"expN2": n2, "expJpJm": mo["expJpJm"], "varX2": complex(var2).real}


def display_discrepancies(
    family: Family, z: complex, m: int, params: IrrepParams, oracle: ObservableReport, rtol: float = 1e-6
) -> list[FormulaDiscrepancy]:
    """Which face-value expressions disagree with the Fock-sum oracle."""
    raw = raw_display_values(family, z, m, params)
    out = []
    for name, val in raw.items():
        ref = getattr(oracle, name)
        err = relative_error(name, val, ref)
        if err > rtol:
            out.append(FormulaDiscrepancy(name, complex(val), complex(ref), err))
    return out
