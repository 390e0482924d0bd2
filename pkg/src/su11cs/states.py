"""Barut-Girardello type coherent states in the truncated Fock basis.

* BGCS   - eigenstates of J₋ (the m = 0 member of both families below).
* NBGCS  - m-deformed displacement of the vacuum,
           cₙ ∝ zⁿ/(λ+1/2+m)ₙ · √((λ+1/2)ₙ/n!).
* PABGCS - (J₊)^m applied to an NBGCS; support starts at n = m,
           d on |n+m⟩ ∝ zⁿ/n! · √((m+1)ₙ/(λ+1/2+m)ₙ).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from .algebra import FockVector, IrrepParams, TruncationPolicy, hamiltonian_phase, raise_power
from .special import hyp, log_pochhammer_seq

CUTOFF_CEILING = 4096


class TruncationError(RuntimeError):
    """The state needs more than CUTOFF_CEILING Fock levels."""


class Family(str, enum.Enum):
    BGCS = "BGCS"
    NBGCS = "NBGCS"
    PABGCS = "PABGCS"


@dataclass(frozen=True)
class StateSpec:
    family: Family
    z: complex
    m: int
    params: IrrepParams

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "z", complex(self.z))
        if int(self.m) != self.m or self.m < 0:
            raise ValueError(f"m must be a non-negative integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        if self.family is Family.BGCS and self.m != 0:
            raise ValueError("BGCS is the m = 0 member; use NBGCS or PABGCS for m > 0")


# --- normalization constants -------------------------------------------------


def nbgcs_norm(z_abs: float, m: int, params: IrrepParams) -> float:
    """1F2([λ+1/2]; [λ+1/2+m, λ+1/2+m]; |z|²)."""
    a = params.alpha
    return hyp([a], [a + m, a + m], z_abs * z_abs)


def pabgcs_norm(z_abs: float, m: int, params: IrrepParams) -> float:
    """1F2([m+1]; [1, λ+1/2+m]; |z|²)."""
    return hyp([m + 1], [1, params.alpha + m], z_abs * z_abs)


# --- coefficient generators (log magnitude of the unnormalized amplitude) ------


def _nbgcs_log_amp(z_abs: float, m: int, params: IrrepParams) -> Callable[[int], np.ndarray]:
    a = params.alpha

    def log_amp(n_max: int) -> np.ndarray:
        n = np.arange(n_max + 1)
        with np.errstate(divide="ignore"):
            log_z = n * math.log(z_abs) if z_abs > 0 else np.where(n == 0, 0.0, -np.inf)
        return (
            log_z
            - log_pochhammer_seq(a + m, n_max)
            + 0.5 * (log_pochhammer_seq(a, n_max) - log_pochhammer_seq(1.0, n_max))
        )

    return log_amp


def _pabgcs_log_amp(z_abs: float, m: int, params: IrrepParams) -> Callable[[int], np.ndarray]:
    a = params.alpha

    def log_amp(n_max: int) -> np.ndarray:
        n = np.arange(n_max + 1)
        with np.errstate(divide="ignore"):
            log_z = n * math.log(z_abs) if z_abs > 0 else np.where(n == 0, 0.0, -np.inf)
        return (
            log_z
            - log_pochhammer_seq(1.0, n_max)
            + 0.5 * (log_pochhammer_seq(m + 1.0, n_max) - log_pochhammer_seq(a + m, n_max))
        )

    return log_amp


def _select_length(log_amp, log_norm: float, trunc: TruncationPolicy, reserve: int):
    """Find how many series terms to keep.

    Doubles the length from ``trunc.cutoff`` until both the last retained
    probability and a geometric tail estimate are below tail_tol, then trims
    back to the shortest length (not below the policy cutoff) whose discarded
    mass is still below tail_tol. ``reserve`` Fock levels precede the series
    (PABGCS support starts at m).
    """
    tol = trunc.tail_tol
    log_tol = math.log(tol)
    n_max = max(trunc.cutoff - reserve, 2)
    while True:
        if n_max + reserve > CUTOFF_CEILING:
            raise TruncationError(
                f"state needs more than {CUTOFF_CEILING} Fock levels at tail_tol={tol:g}"
            )
        # work with log-probabilities: near the peak of a large-|z| state the
        # leading terms underflow while the distribution is still rising
        logp = 2 * log_amp(n_max + 1) - log_norm
        last, nxt, prev = logp[-2], logp[-1], logp[-3]
        if last == -np.inf:
            tail, done = 0.0, True  # z = 0: a single Fock level
        else:
            log_rho = nxt - last
            decreasing = log_rho < 0 and (prev == -np.inf or log_rho <= last - prev)
            tail = math.exp(nxt) / -math.expm1(log_rho) if log_rho < 0 else math.inf
            done = last < log_tol and decreasing and tail < tol
        if done:
            break
        n_max *= 2
    p = np.exp(logp)
    p = p[:-1]
    # discarded mass if we stop at index k: sum(p[k+1:]) + tail
    discarded = np.concatenate([np.cumsum(p[::-1])[::-1][1:], [0.0]]) + tail
    ok = np.nonzero(discarded < tol)[0]
    floor = max(trunc.cutoff - reserve, 0)
    k = max(int(ok[0]), floor) if ok.size else n_max
    k = min(k, n_max)
    return k, float(discarded[k])


def _log_norm(closed_form: float, log_amp, reserve: int) -> float:
    """ln of the normalization; falls back to a log-space sum of the series
    when the closed form overflows (|z| beyond a few hundred)."""
    if math.isfinite(closed_form) and closed_form > 0:
        return math.log(closed_form)
    n_max = 64
    while n_max + reserve <= 2 * CUTOFF_CEILING:
        logs = 2 * log_amp(n_max)
        peak = int(np.argmax(logs))
        if peak < n_max and logs[-1] < logs[peak] - 80 and logs[-1] < logs[-2]:
            return float(logsumexp(logs))
        n_max *= 2
    raise TruncationError(f"state needs more than {CUTOFF_CEILING} Fock levels")


def _build(log_amp, log_norm, z, reserve, params, trunc) -> FockVector:
    n_keep, tail = _select_length(log_amp, log_norm, trunc, reserve)
    logs = log_amp(n_keep)
    n = np.arange(n_keep + 1)
    # normalize on the retained terms; the closed form only steers the cutoff
    mags = np.exp(logs - 0.5 * logsumexp(2 * logs))
    mags /= math.sqrt(math.fsum(mags * mags))  # mop up exp() rounding at large n
    phase = np.exp(1j * n * cmath.phase(z)) if z != 0 else np.ones(n_keep + 1)
    coeffs = np.zeros(reserve + n_keep + 1, dtype=complex)
    coeffs[reserve:] = mags * phase
    return FockVector(params, coeffs, tail)


def nbgcs(spec: StateSpec, trunc: TruncationPolicy = TruncationPolicy()) -> FockVector:
    """Normalized NBGCS (BGCS for m = 0) as a truncated Fock vector."""
    if spec.family is Family.PABGCS:
        raise ValueError("nbgcs() builds BGCS/NBGCS states")
    z_abs = abs(spec.z)
    log_amp = _nbgcs_log_amp(z_abs, spec.m, spec.params)
    log_norm = _log_norm(nbgcs_norm(z_abs, spec.m, spec.params), log_amp, 0)
    return _build(log_amp, log_norm, spec.z, 0, spec.params, trunc)


def pabgcs(spec: StateSpec, trunc: TruncationPolicy = TruncationPolicy()) -> FockVector:
    """Normalized PABGCS; Fock components 0..m−1 are exactly zero."""
    z_abs = abs(spec.z)
    log_amp = _pabgcs_log_amp(z_abs, spec.m, spec.params)
    log_norm = _log_norm(pabgcs_norm(z_abs, spec.m, spec.params), log_amp, spec.m)
    return _build(log_amp, log_norm, spec.z, spec.m, spec.params, trunc)


def build_state(spec: StateSpec, trunc: TruncationPolicy = TruncationPolicy()) -> FockVector:
    if spec.family is Family.PABGCS:
        return pabgcs(spec, trunc)
    return nbgcs(spec, trunc)


def pabgcs_from_diagram(spec: StateSpec, trunc: TruncationPolicy = TruncationPolicy()) -> FockVector:
    """PABGCS built the other way round: NBGCS first, then (J₊)^m, then renormalize."""
    base = nbgcs(StateSpec(Family.NBGCS, spec.z, spec.m, spec.params), trunc)
    # pad so that (J₊)^m does not push any retained amplitude past the cutoff
    cutoff = max(base.cutoff + spec.m, 2 * spec.m)
    raised = raise_power(base.padded(cutoff), spec.m)
    norm2 = raised.norm2()
    return FockVector(raised.params, raised.coeffs / math.sqrt(norm2), raised.tail_bound / norm2)


# --- overlaps ----------------------------------------------------------------


def overlap(u: FockVector, v: FockVector) -> complex:
    """⟨u, v⟩ = Σ conj(uₙ) vₙ."""
    if u.params != v.params:
        raise ValueError(f"lambda mismatch: {u.params.lam} vs {v.params.lam}")
    k = min(u.coeffs.size, v.coeffs.size)
    return complex(np.vdot(u.coeffs[:k], v.coeffs[:k]))


def nbgcs_overlap_closed(z1: complex, m1: int, z2: complex, m2: int, params: IrrepParams) -> complex:
    """⟨z1, f_m1 | z2, f_m2⟩ from the 1F2 closed form."""
    a = params.alpha
    num = hyp([a], [a + m1, a + m2], complex(z1).conjugate() * complex(z2))
    den = math.sqrt(nbgcs_norm(abs(z1), m1, params) * nbgcs_norm(abs(z2), m2, params))
    return complex(num) / den


def pabgcs_overlap_closed(
    z1: complex, z2: complex, m: int, params: IrrepParams, m_bra: int | None = None
) -> complex:
    """⟨z1, m_bra || z2, m⟩ for PABGCS states (m_bra defaults to m).

    For unequal orders the sum is Σ (z̄1 z2)ⁿ (m+1)ₙ / ((λ+1/2+m)ₙ n! (n+m−m')!)
    times z̄1^(m−m') and a Pochhammer prefactor; the m' > m case is obtained
    by conjugate symmetry, so only non-negative integer powers occur.
    """
    mb = m if m_bra is None else m_bra
    if mb > m:
        return pabgcs_overlap_closed(z2, z1, mb, params, m_bra=m).conjugate()
    a = params.alpha
    z1c, z2c = complex(z1), complex(z2)
    den = math.sqrt(pabgcs_norm(abs(z1c), mb, params) * pabgcs_norm(abs(z2c), m, params))
    if mb == m:
        return complex(hyp([m + 1], [1, a + m], z1c.conjugate() * z2c)) / den
    d = m - mb
    # Σ wⁿ (m+1)ₙ / ((a+m)ₙ n! (n+d)!) = 1F2([m+1]; [1+d, a+m]; w) / d!
    series = complex(hyp([m + 1], [1 + d, a + m], z1c.conjugate() * z2c)) / math.factorial(d)
    log_pref = 0.5 * (
        math.lgamma(m + 1) - math.lgamma(mb + 1)
        + math.lgamma(a + mb) - math.lgamma(a + m)
    )
    return math.exp(log_pref) * z1c.conjugate() ** d * series / den


def evolve_check(spec: StateSpec, t: float, trunc: TruncationPolicy = TruncationPolicy()) -> float:
    """‖e^{−itH}|z, f_m⟩ − e^{−it(λ+1/2)}|z e^{−2it}, f_m⟩‖."""
    if spec.family is Family.PABGCS:
        raise ValueError("temporal stability is checked for BGCS/NBGCS states")
    v = nbgcs(spec, trunc)
    lhs = hamiltonian_phase(v, t)
    rotated = StateSpec(spec.family, spec.z * cmath.exp(-2j * t), spec.m, spec.params)
    rhs = nbgcs(rotated, trunc).scaled(cmath.exp(-1j * t * spec.params.alpha))
    k = max(lhs.cutoff, rhs.cutoff)
    return float(np.linalg.norm(lhs.padded(k).coeffs - rhs.padded(k).coeffs))
