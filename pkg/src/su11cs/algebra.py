"""su(1,1) ladder operators acting on truncated Fock vectors |n, λ⟩, n = 0..cutoff.

J₊|n⟩ = √((n+1)(n+λ+1/2)) |n+1⟩, J₋|n⟩ = √(n(n+λ−1/2)) |n−1⟩,
J₃|n⟩ = (n + λ/2 + 1/4) |n⟩, H|n⟩ = (2n + λ + 1/2) |n⟩.

Operators never raise on truncation; mass pushed past the cutoff is added to
``tail_bound`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .special import log_pochhammer_seq


@dataclass(frozen=True)
class IrrepParams:
    """Representation label λ (must exceed −1/2)."""

    lam: float

    def __post_init__(self):
        if not np.isfinite(self.lam) or self.lam <= -0.5:
            raise ValueError(f"lambda must be > -1/2, got {self.lam}")

    @property
    def bargmann_shift(self) -> float:
        """λ/2 + 1/4, the J₃ eigenvalue of the vacuum."""
        return self.lam / 2 + 0.25

    @property
    def alpha(self) -> float:
        """λ + 1/2, the recurring Pochhammer base."""
        return self.lam + 0.5


@dataclass(frozen=True)
class TruncationPolicy:
    cutoff: int = 32
    tail_tol: float = 1e-15

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 2:
            raise ValueError(f"cutoff must be an integer >= 2, got {self.cutoff}")
        if not 0 < self.tail_tol <= 1e-8:
            raise ValueError(f"tail_tol must lie in (0, 1e-8], got {self.tail_tol}")


@dataclass(frozen=True, eq=False)
class FockVector:
    params: IrrepParams
    coeffs: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coeffs must be a non-empty 1-d array")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def cutoff(self) -> int:
        return self.coeffs.size - 1

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def padded(self, cutoff: int) -> "FockVector":
        if cutoff < self.cutoff:
            raise ValueError("padded() cannot shrink a vector")
        c = np.zeros(cutoff + 1, dtype=complex)
        c[: self.coeffs.size] = self.coeffs
        return replace(self, coeffs=c)

    def scaled(self, factor: complex) -> "FockVector":
        return replace(
            self, coeffs=self.coeffs * factor, tail_bound=self.tail_bound * abs(factor) ** 2
        )

    def normalized(self) -> "FockVector":
        return self.scaled(1 / np.sqrt(self.norm2()))


def basis(n: int, params: IrrepParams, cutoff: int) -> FockVector:
    """The Fock state e_n on a space truncated at ``cutoff``."""
    if not 0 <= n <= cutoff:
        raise ValueError(f"index {n} outside 0..{cutoff}")
    c = np.zeros(cutoff + 1, dtype=complex)
    c[n] = 1.0
    return FockVector(params, c)


def raise_coefficients(params: IrrepParams, cutoff: int) -> np.ndarray:
    """r[n] = √((n+1)(n+λ+1/2)): J₊ e_n = r[n] e_{n+1}."""
    n = np.arange(cutoff + 1)
    return np.sqrt((n + 1) * (n + params.alpha))


def lower_coefficients(params: IrrepParams, cutoff: int) -> np.ndarray:
    """l[n] = √(n(n+λ−1/2)): J₋ e_n = l[n] e_{n−1}."""
    n = np.arange(cutoff + 1)
    return np.sqrt(n * (n + params.lam - 0.5))


def raise_(v: FockVector) -> FockVector:
    r = raise_coefficients(v.params, v.cutoff)
    out = np.zeros_like(v.coeffs)
    out[1:] = r[:-1] * v.coeffs[:-1]
    lost = float(abs(r[-1] * v.coeffs[-1]) ** 2)
    return FockVector(v.params, out, v.tail_bound + lost)


def lower(v: FockVector) -> FockVector:
    l = lower_coefficients(v.params, v.cutoff)
    out = np.zeros_like(v.coeffs)
    out[:-1] = l[1:] * v.coeffs[1:]
    return FockVector(v.params, out, v.tail_bound)


def j3(v: FockVector) -> FockVector:
    n = np.arange(v.cutoff + 1)
    return FockVector(v.params, (n + v.params.bargmann_shift) * v.coeffs, v.tail_bound)


def number(v: FockVector) -> FockVector:
    """N̂ = J₃ − λ/2 − 1/4, with N̂ e_n = n e_n."""
    n = np.arange(v.cutoff + 1)
    return FockVector(v.params, n * v.coeffs, v.tail_bound)


def raise_power(v: FockVector, m: int) -> FockVector:
    """(J₊)^m v, evaluated in one shot through log-Pochhammer factors.

    (J₊)^m e_n = √((n+1)_m (n+λ+1/2)_m) e_{n+m}.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > v.cutoff // 2:
        raise ValueError(f"m={m} too large for cutoff {v.cutoff} (need m <= cutoff/2)")
    if m == 0:
        return v
    N = v.cutoff
    n = np.arange(N + 1)
    # ln (n+1)_m = ln Γ(n+1+m) − ln Γ(n+1), built from cumulative logs
    lf = log_pochhammer_seq(1.0, N + m)  # ln k!
    la = log_pochhammer_seq(v.params.alpha, N + m)  # ln (α)_k
    log_gain = 0.5 * ((lf[n + m] - lf[n]) + (la[n + m] - la[n]))
    gain = np.exp(log_gain)
    out = np.zeros_like(v.coeffs)
    out[m:] = gain[: N + 1 - m] * v.coeffs[: N + 1 - m]
    lost = float(np.sum(np.abs(gain[N + 1 - m :] * v.coeffs[N + 1 - m :]) ** 2))
    return FockVector(v.params, out, v.tail_bound + lost)


def hamiltonian_phase(v: FockVector, t: float) -> FockVector:
    """exp(−itH) v with H e_n = (2n + λ + 1/2) e_n."""
    n = np.arange(v.cutoff + 1)
    phase = np.exp(-1j * t * (2 * n + v.params.alpha))
    return FockVector(v.params, phase * v.coeffs, v.tail_bound)


def ladder_matrices(params: IrrepParams, cutoff: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense (J₊, J₋, J₃) on the truncated space."""
    r = raise_coefficients(params, cutoff)
    jp = np.diag(r[:-1], k=-1)
    jm = jp.T.copy()
    j3m = np.diag(np.arange(cutoff + 1) + params.bargmann_shift)
    return jp, jm, j3m


def verify_commutators(cutoff: int, params: IrrepParams) -> float:
    """Largest residual of [J₊,J₋] = −2J₃ and [J₃,J±] = ±J± on e_n, n ≤ cutoff−2."""
    if cutoff < 4:
        raise ValueError("cutoff must be >= 4")
    jp, jm, j3m = ladder_matrices(params, cutoff)
    c1 = jp @ jm - jm @ jp + 2 * j3m
    c2 = j3m @ jp - jp @ j3m - jp
    c3 = j3m @ jm - jm @ j3m + jm
    interior = slice(0, cutoff - 1)
    r1 = np.linalg.norm(c1[:, interior], axis=0)
    r2 = np.linalg.norm(c2[:, interior], axis=0)
    r3 = np.linalg.norm(c3[:, interior], axis=0)
    return float(max(r1.max(), r2.max(), r3.max()))
