"""Figure data (|z| sweeps of Q, S1 and the m = 0 measure), CSV and SVG emission."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import IrrepParams, TruncationPolicy
from .measures import measure_pointwise_m0
from .observables import expectation_suite
from .states import Family, StateSpec, build_state

FIGURE_M = tuple(range(6))
K_CLIP = 1e-3


class FigureScopeError(ValueError):
    """Requested figure variant is outside what the package can evaluate."""


@dataclass(frozen=True)
class FigureSpec:
    fig_id: int
    family: Family
    quantity: str  # "Q", "S1" or "K"
    phase: float
    m_values: tuple[int, ...] = FIGURE_M


FIGURES = {
    1: FigureSpec(1, Family.BGCS, "K", 0.0, (0,)),
    2: FigureSpec(2, Family.NBGCS, "Q", 0.0),
    3: FigureSpec(3, Family.NBGCS, "S1", math.pi / 3),
    4: FigureSpec(4, Family.PABGCS, "Q", 0.0),
    5: FigureSpec(5, Family.PABGCS, "S1", 0.0),
}


@dataclass
class Table:
    header_lines: list[str]
    columns: list[str]
    rows: list[list[float]] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows], dtype=float)


def fmt(x) -> str:
    """17 significant digits; integers stay integers."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def header_line(family, m, lam: float, phase: float) -> str:
    fam = family.value if isinstance(family, Family) else family
    return f"# su11-coherent v1; family={fam}; m={m}; lambda={fmt(lam)}; phase={fmt(phase)}"


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    for line in table.header_lines:
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def z_grid(z_min: float, z_max: float, points: int) -> np.ndarray:
    """``points`` samples of |z|; a zero lower bound is treated as open, (0, z_max]."""
    if z_min == 0:
        return z_max * np.arange(1, points + 1) / points
    return np.linspace(z_min, z_max, points)


def figure_table(
    fig_id: int,
    params: IrrepParams = IrrepParams(0.5),
    z_min: float = 0.0,
    z_max: float = 6.0,
    points: int = 240,
    phase: float | None = None,
    m: int | None = None,
    trunc: TruncationPolicy = TruncationPolicy(),
) -> Table:
    if fig_id not in FIGURES:
        raise ValueError(f"figure id must be one of {sorted(FIGURES)}, got {fig_id}")
    fig = FIGURES[fig_id]
    if fig_id == 1 and m not in (None, 0):
        raise FigureScopeError("figure 1 for m >= 1 is out of scope (Mellin-verified only)")
    phi = fig.phase if phase is None else phase
    zs = z_grid(z_min, z_max, points)
    cols = ["z_abs"] + [f"{fig.quantity}_m{k}" for k in fig.m_values]
    m_label = "0" if fig_id == 1 else f"{fig.m_values[0]}..{fig.m_values[-1]}"
    header = [
        header_line(fig.family, m_label, params.lam, phi),
        f"# figure={fig_id}; tail_tol={fmt(trunc.tail_tol)}",
    ]
    values = np.empty((zs.size, len(fig.m_values)))
    for j, mk in enumerate(fig.m_values):
        for i, za in enumerate(zs):
            values[i, j] = _point(fig, float(za), phi, mk, params, trunc)
    table = Table(header, cols)
    for i, za in enumerate(zs):
        table.rows.append([float(za)] + [float(v) for v in values[i]])
    return table


def _point(fig: FigureSpec, z_abs: float, phase: float, m: int, params, trunc) -> float:
    if fig.quantity == "K":
        # logarithmic divergence at 0 for λ = 1/2; clip the abscissa
        return measure_pointwise_m0(max(z_abs, K_CLIP), params)
    family = Family.NBGCS if m == 0 and fig.family is Family.BGCS else fig.family
    spec = StateSpec(family, z_abs * complex(math.cos(phase), math.sin(phase)), m, params)
    rep = expectation_suite(build_state(spec, trunc))
    return rep.mandelQ if fig.quantity == "Q" else rep.S1


# --- SVG ------------------------------------------------------------------------

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf")


def to_svg(table: Table, width: int = 640, height: int = 420) -> str:
    """Minimal line plot: axes, tick labels at the extremes, legend, one polyline per column."""
    x = table.column(table.columns[0])
    series = [(name, table.column(name)) for name in table.columns[1:]]
    finite = np.concatenate([y[np.isfinite(y)] for _, y in series] or [np.zeros(1)])
    y_lo, y_hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1, y_hi + 1
    x_lo, x_hi = float(x.min()), float(x.max())
    left, right, top, bottom = 70, 130, 20, 40
    pw, ph = width - left - right, height - top - bottom

    def sx(v):
        return left + (v - x_lo) / (x_hi - x_lo or 1) * pw

    def sy(v):
        return top + (y_hi - v) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{left}" y="{height - 20}">{x_lo:.3g}</text>',
        f'<text x="{left + pw}" y="{height - 20}" text-anchor="end">{x_hi:.3g}</text>',
        f'<text x="{left + pw / 2}" y="{height - 5}" text-anchor="middle">{table.columns[0]}</text>',
        f'<text x="{left - 5}" y="{top + 10}" text-anchor="end">{y_hi:.3g}</text>',
        f'<text x="{left - 5}" y="{top + ph}" text-anchor="end">{y_lo:.3g}</text>',
    ]
    if y_lo < 0 < y_hi:
        out.append(
            f'<line x1="{left}" y1="{sy(0):.2f}" x2="{left + pw}" y2="{sy(0):.2f}" '
            'stroke="#999" stroke-dasharray="4 3"/>'
        )
    for k, (name, y) in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y) if np.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = top + 15 + 16 * k
        out.append(
            f'<line x1="{left + pw + 10}" y1="{ly}" x2="{left + pw + 30}" y2="{ly}" stroke="{color}"/>'
        )
        out.append(f'<text x="{left + pw + 35}" y="{ly + 4}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
