"""Half-line wavefunctions ⟨x|n,λ⟩ and ⟨x|ψ⟩.

⟨x|n,λ⟩ = (−1)ⁿ √(2 n!/Γ(n+λ+1/2)) x^λ e^{−x²/2} Lₙ^{λ−1/2}(x²)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, roots_genlaguerre

from .algebra import FockVector, IrrepParams
from .special import bessel_i, hyp


@dataclass(frozen=True, eq=False)
class PositionGrid:
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.points) <= 0) or self.points[0] <= 0:
            raise ValueError("grid points must be positive and strictly increasing")

    def integrate(self, values: np.ndarray) -> complex | float:
        return np.sum(self.weights * values)


def gauss_grid(params: IrrepParams, order: int = 96) -> PositionGrid:
    """Quadrature on (0, ∞) built from generalized Gauss-Laguerre in u = x².

    Exact for x^{2λ} e^{−x²} times a polynomial in x² of degree < 2·order, which
    covers every product ⟨x|n⟩⟨x|n'⟩ with n + n' < 2·order.
    """
    alpha = params.lam - 0.5
    u, w = roots_genlaguerre(order, alpha)
    # ∫ g(x) dx = ∫ g(√u) du / (2√u); divide out the u^α e^{−u} weight
    log_w = np.log(w) + u - alpha * np.log(u) - math.log(2) - 0.5 * np.log(u)
    return PositionGrid(np.sqrt(u), np.exp(log_w))


def eigenfunctions(x, n_max: int, params: IrrepParams) -> np.ndarray:
    """Rows n = 0..n_max of ⟨x|n,λ⟩ on the points ``x`` (three-term recurrence)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise ValueError("eigenfunctions are defined for x > 0")
    alpha = params.lam - 0.5
    y = x * x
    out = np.empty((n_max + 1, x.size))
    # carry x^λ e^{−y/2} inside the recurrence so Lₙ never overflows on its own
    prev = np.exp(params.lam * np.log(x) - y / 2)
    out[0] = prev
    if n_max >= 1:
        cur = (1 + alpha - y) * prev
        out[1] = cur
        for k in range(1, n_max):
            nxt = ((2 * k + 1 + alpha - y) * cur - (k + alpha) * prev) / (k + 1)
            prev, cur = cur, nxt
            out[k + 1] = cur
    n = np.arange(n_max + 1)
    log_norm = 0.5 * (math.log(2) + gammaln(n + 1) - gammaln(n + params.alpha))
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    return (sign * np.exp(log_norm))[:, None] * out


def eigenfunction(x, n: int, params: IrrepParams):
    vals = eigenfunctions(x, n, params)[n]
    return vals if np.ndim(x) else float(vals[0])


def orthonormality_check(n: int, n_prime: int, params: IrrepParams, grid: PositionGrid | None = None) -> float:
    """∫₀^∞ ⟨x|n⟩⟨x|n'⟩ dx by quadrature."""
    if max(n, n_prime) > 40:
        raise ValueError("orthonormality check supports n, n' <= 40")
    grid = grid or gauss_grid(params)
    psi = eigenfunctions(grid.points, max(n, n_prime), params)
    return float(grid.integrate(psi[n] * psi[n_prime]))


def wavefunction(x, v: FockVector):
    """Σ cₙ ⟨x|n,λ⟩."""
    psi = eigenfunctions(x, v.cutoff, v.params)
    vals = v.coeffs @ psi
    return vals if np.ndim(x) else complex(vals[0])


def bgcs_wavefunction_closed(x, z: complex, params: IrrepParams):
    """Closed form of ⟨x|z⟩ for the m = 0 state:

    √(2x) (−z/|z|)^{1/4−λ/2} J_{λ−1/2}(2ix√z) e^{−z−x²/2} / √I_{λ−1/2}(2|z|),

    with J_ν(w) = (w/2)^ν/Γ(ν+1) · 0F1(; ν+1; −w²/4). Principal branches
    throughout; only the modulus is convention independent.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    z = complex(z)
    if z == 0:
        vals = eigenfunction(xs, 0, params).astype(complex)  # ground-state limit
        return vals if np.ndim(x) else complex(vals[0])
    nu = params.lam - 0.5
    phase = (-z / abs(z)) ** (0.25 - params.lam / 2)
    norm = math.sqrt(bessel_i(nu, 2 * abs(z)))
    out = np.empty(xs.size, dtype=complex)
    for i, xi in enumerate(xs):
        w = 2j * xi * cmath.sqrt(z)
        bessel_j = (w / 2) ** nu / math.gamma(nu + 1) * hyp([], [nu + 1], -(w * w) / 4)
        out[i] = math.sqrt(2 * xi) * phase * bessel_j * cmath.exp(-z - xi * xi / 2) / norm
    return out if np.ndim(x) else complex(out[0])
