"""Nonlinearity functions, eigen-relation residuals and displacement shift identities."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    FockVector,
    IrrepParams,
    TruncationPolicy,
    basis,
    ladder_matrices,
    lower,
    raise_,
    raise_power,
)
from .states import Family, StateSpec, nbgcs, pabgcs, pabgcs_from_diagram


class NonlinearityKind(str, enum.Enum):
    NBGCS_f = "NBGCS_f"
    PABGCS_f = "PABGCS_f"


@dataclass(frozen=True)
class NonlinearityFunction:
    kind: NonlinearityKind
    m: int
    params: IrrepParams

    def __call__(self, n) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        if NonlinearityKind(self.kind) is NonlinearityKind.NBGCS_f:
            return 1 + self.m / (n + self.params.alpha)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.numerator(n) / self.denominator(n)

    def numerator(self, n) -> np.ndarray:
        """Regular part of the PABGCS function: (N+λ+1/2)·(1 − 2m(N+λ/2+3/4−m/2)/((N+1)(N+λ+1/2)))."""
        n = np.asarray(n, dtype=float)
        a, m = self.params.alpha, self.m
        return (n + a) - 2 * m * (n + self.params.lam / 2 + 0.75 - m / 2) / (n + 1)

    def denominator(self, n) -> np.ndarray:
        """N + λ + 1/2 − m; vanishes at n = m − λ − 1/2."""
        return np.asarray(n, dtype=float) + self.params.alpha - self.m


def _interior_norm(diff: np.ndarray, include_tail: bool) -> float:
    # the top index needs a coefficient beyond the cutoff
    return float(np.linalg.norm(diff if include_tail else diff[:-1]))


def nbgcs_eigen_residual(
    spec: StateSpec, trunc: TruncationPolicy = TruncationPolicy(), include_tail: bool = False
) -> float:
    """‖f_m(N̂) J₋ v − z v‖ for v the NBGCS, f_m(n) = 1 + m/(n+λ+1/2)."""
    v = nbgcs(spec, trunc)
    f = NonlinearityFunction(NonlinearityKind.NBGCS_f, spec.m, spec.params)
    n = np.arange(v.cutoff + 1)
    lhs = f(n) * lower(v).coeffs
    return _interior_norm(lhs - spec.z * v.coeffs, include_tail)


def _pabgcs_relation_diff(v: FockVector, z: complex, m: int) -> np.ndarray:
    # multiplied through by (N+λ+1/2−m) to stay off the removable 0/0
    f = NonlinearityFunction(NonlinearityKind.PABGCS_f, m, v.params)
    n = np.arange(v.cutoff + 1)
    return f.numerator(n) * lower(v).coeffs - z * f.denominator(n) * v.coeffs


def pabgcs_eigen_residual(
    spec: StateSpec, trunc: TruncationPolicy = TruncationPolicy(), include_tail: bool = False
) -> float:
    """Residual of the PABGCS nonlinear eigen-relation in multiplied-through form."""
    v = pabgcs(StateSpec(Family.PABGCS, spec.z, spec.m, spec.params), trunc)
    return _interior_norm(_pabgcs_relation_diff(v, spec.z, spec.m), include_tail)


def pabgcs_two_path_residual(spec: StateSpec, trunc: TruncationPolicy = TruncationPolicy()) -> float:
    """Raise both sides of the NBGCS eigen-relation m times, and check the
    PABGCS relation on the diagram-built state. Returns the larger residual,
    relative to the norm of the raised state."""
    m = spec.m
    phi = nbgcs(StateSpec(Family.NBGCS, spec.z, m, spec.params), trunc)
    phi = phi.padded(phi.cutoff + m + 1)
    f = NonlinearityFunction(NonlinearityKind.NBGCS_f, m, spec.params)
    n = np.arange(phi.cutoff + 1)
    deformed = FockVector(phi.params, f(n) * lower(phi).coeffs)
    lhs = raise_power(deformed, m).coeffs
    rhs = spec.z * raise_power(phi, m).coeffs
    scale = math.sqrt(raise_power(phi, m).norm2())
    r1 = np.linalg.norm((lhs - rhs)[:-1]) / scale
    psi = pabgcs_from_diagram(StateSpec(Family.PABGCS, spec.z, m, spec.params), trunc)
    r2 = _interior_norm(_pabgcs_relation_diff(psi, spec.z, m), False)
    return float(max(r1, r2))


# --- shift identities --------------------------------------------------------


def _raising_exponential(z: complex, shift: float, params: IrrepParams, cutoff: int) -> np.ndarray:
    """exp((z/(N̂+shift)) J₊) on the truncated space.

    The exponent only raises, so the exponential series terminates and every
    matrix element is a single finite product.
    """
    jp, _, _ = ladder_matrices(params, cutoff)
    n = np.arange(cutoff + 1, dtype=float)
    den = n + shift
    d = np.zeros(cutoff + 1, dtype=complex)
    d[den != 0] = complex(z) / den[den != 0]
    # row 0 of J₊ is empty, so a vanishing n+shift there is never used
    gen = d[:, None] * jp
    out = np.eye(cutoff + 1, dtype=complex)
    term = np.eye(cutoff + 1, dtype=complex)
    for k in range(1, cutoff + 1):
        term = term @ gen / k
        if not term.any():
            break
        out += term
    return out


def _elementwise_rel_dev(a: np.ndarray, b: np.ndarray) -> float:
    scale = np.maximum(np.abs(a), np.abs(b))
    mask = scale > 0
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(a - b)[mask] / scale[mask]))


def displacement_shift_deviation(m: int, z: complex, params: IrrepParams, cutoff: int) -> float:
    """exp((z/(N̂+λ−1/2)) J₊)(J₊)^m vs (J₊)^m exp((z/(N̂+λ−1/2+m)) J₊), elementwise."""
    jp, _, _ = ladder_matrices(params, cutoff)
    jpm = np.linalg.matrix_power(jp, m).astype(complex)
    left = _raising_exponential(z, params.lam - 0.5, params, cutoff) @ jpm
    right = jpm @ _raising_exponential(z, params.lam - 0.5 + m, params, cutoff)
    return _elementwise_rel_dev(left, right)


def pochhammer_power_deviation(n: int, j: int, m: int, params: IrrepParams, cutoff: int) -> float:
    """((N̂+λ−1/2+m)⁻¹J₊)ⁿ e_j vs (J₊)ⁿ (N̂+λ+1/2+m)ₙ⁻¹ e_j."""
    v = basis(j, params, cutoff)
    denom = np.arange(cutoff + 1) + params.lam - 0.5 + m
    denom[denom == 0] = 1.0  # only index 0, which J₊ never populates
    lhs = v
    for _ in range(n):
        lhs = FockVector(params, raise_(lhs).coeffs / denom)
    poch = math.exp(math.lgamma(j + params.alpha + m + n) - math.lgamma(j + params.alpha + m))
    rhs = v.scaled(1 / poch)
    for _ in range(n):
        rhs = raise_(rhs)
    return _elementwise_rel_dev(lhs.coeffs, rhs.coeffs)


def shift_identity_check(m: int, z: complex, params: IrrepParams, cutoff: int) -> float:
    """Worst deviation over the displacement shift identity and the
    Pochhammer power identity (n ≤ 6 on every e_j that stays in range)."""
    if cutoff < 4 * m + 16:
        raise ValueError(f"cutoff must be >= 4m+16 = {4 * m + 16}")
    worst = displacement_shift_deviation(m, z, params, cutoff)
    for n in range(7):
        for j in range(0, cutoff - n + 1, max(1, cutoff // 16)):
            worst = max(worst, pochhammer_power_deviation(n, j, m, params, cutoff))
    return worst
