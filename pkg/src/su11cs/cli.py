"""Command-line entry point.

    su11cs state        --family PABGCS --m 2 --z-abs 1 --phase 0
    su11cs observables  --family NBGCS --m 3 --zmin 0 --zmax 4 --points 50
    su11cs wavefunction --family BGCS --z-abs 1 --xmin 0.05 --xmax 5
    su11cs figure 3 --out fig3.svg --format svg
    su11cs verify all

Settings resolve as flags > ``--config`` file (flat ``key = value`` lines) > defaults.
Exit codes: 0 success, 1 verification failure, 2 usage/config/construction error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .algebra import IrrepParams, TruncationPolicy
from .figures import FigureScopeError, Table, figure_table, fmt, header_line, to_csv, to_svg, z_grid
from .observables import REPORT_FIELDS, closed_suite, expectation_suite
from .position import wavefunction
from .special import ConvergenceError
from .states import Family, StateSpec, TruncationError, build_state
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    family: str = "NBGCS"
    m: int = 0
    lam: float = 0.5
    phase: float = 0.0
    z_abs: float = 1.0
    zmin: float = 0.0
    zmax: float = 6.0
    points: int = 240
    xmin: float = 0.0
    xmax: float = 6.0
    out: str | None = None
    format: str = "csv"
    tail_tol: float = 1e-15
    cutoff: int = 32
    seed: int = 0
    source: str = "oracle"

    def validate(self) -> "RunConfig":
        try:
            Family(self.family)
        except ValueError:
            raise ConfigError(f"family must be one of BGCS, NBGCS, PABGCS; got {self.family!r}") from None
        if self.m < 0:
            raise ConfigError("m must be >= 0")
        if Family(self.family) is Family.BGCS and self.m != 0:
            raise ConfigError("BGCS has m = 0")
        if not self.lam > -0.5:
            raise ConfigError("lambda must exceed -1/2")
        if not 0 <= self.phase < 2 * math.pi:
            raise ConfigError("phase must lie in [0, 2*pi)")
        if not 2 <= self.points <= 100_000:
            raise ConfigError("points must lie in [2, 100000]")
        if self.zmin < 0 or self.zmax <= self.zmin:
            raise ConfigError("need 0 <= zmin < zmax")
        if self.z_abs < 0:
            raise ConfigError("z-abs must be >= 0")
        if self.xmin < 0 or self.xmax <= self.xmin:
            raise ConfigError("need 0 <= xmin < xmax")
        if self.format not in ("csv", "svg"):
            raise ConfigError("format must be csv or svg")
        if not 0 < self.tail_tol <= 1e-8:
            raise ConfigError("tail-tol must lie in (0, 1e-8]")
        if self.cutoff < 2:
            raise ConfigError("cutoff must be >= 2")
        if self.source not in ("oracle", "closed"):
            raise ConfigError("source must be oracle or closed")
        return self

    @property
    def params(self) -> IrrepParams:
        return IrrepParams(self.lam)

    @property
    def trunc(self) -> TruncationPolicy:
        return TruncationPolicy(cutoff=self.cutoff, tail_tol=self.tail_tol)

    @property
    def z(self) -> complex:
        return self.z_abs * complex(math.cos(self.phase), math.sin(self.phase))


# flag/config-key name -> RunConfig field
_KEYS = {
    "family": "family",
    "m": "m",
    "lambda": "lam",
    "phase": "phase",
    "z_abs": "z_abs",
    "zmin": "zmin",
    "zmax": "zmax",
    "points": "points",
    "xmin": "xmin",
    "xmax": "xmax",
    "out": "out",
    "format": "format",
    "tail_tol": "tail_tol",
    "cutoff": "cutoff",
    "seed": "seed",
    "source": "source",
}
_TYPES = {f.name: f.type for f in fields(RunConfig)}
_CASTS = {"int": int, "float": float, "str": str, "str | None": str}


def _coerce(field: str, raw):
    cast = _CASTS[_TYPES[field]]
    try:
        return cast(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"bad value for {field}: {raw!r}") from None


def parse_config_file(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment; keys use '-' or '_'."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[_KEYS[key]] = _coerce(_KEYS[key], value)
    return out


def resolve_config(args: argparse.Namespace) -> tuple[RunConfig, frozenset[str]]:
    """Merged config plus the set of fields set explicitly (by file or flag)."""
    from_file = parse_config_file(args.config) if getattr(args, "config", None) else {}
    flags = {}
    for key, field in _KEYS.items():
        val = getattr(args, key, None)
        if val is not None:
            flags[field] = _coerce(field, val)
    cfg = replace(RunConfig(), **{**from_file, **flags}).validate()
    return cfg, frozenset(from_file) | frozenset(flags)


# --- commands ---------------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_state(cfg: RunConfig) -> int:
    spec = StateSpec(Family(cfg.family), cfg.z, cfg.m, cfg.params)
    v = build_state(spec, cfg.trunc)
    table = Table(
        [
            header_line(spec.family, cfg.m, cfg.lam, cfg.phase),
            f"# z_abs={fmt(cfg.z_abs)}; tail_tol={fmt(cfg.tail_tol)}; tail_bound={fmt(v.tail_bound)}",
        ],
        ["n", "re", "im", "prob"],
    )
    for n, c in enumerate(v.coeffs):
        table.rows.append([n, c.real, c.imag, abs(c) ** 2])
    _emit(to_csv(table), cfg.out)
    return EXIT_OK


def cmd_observables(cfg: RunConfig) -> int:
    family = Family(cfg.family)
    cols = ["z_abs"]
    for name in REPORT_FIELDS:
        cols += [f"{name}_re", f"{name}_im"] if name in ("expJp", "expJm", "expJp2", "expJm2") else [name]
    table = Table(
        [
            header_line(family, cfg.m, cfg.lam, cfg.phase),
            f"# source={cfg.source}; tail_tol={fmt(cfg.tail_tol)}",
        ],
        cols,
    )
    for za in z_grid(cfg.zmin, cfg.zmax, cfg.points):
        z = float(za) * complex(math.cos(cfg.phase), math.sin(cfg.phase))
        if cfg.source == "closed":
            rep = closed_suite(family, z, cfg.m, cfg.params)
        else:
            rep = expectation_suite(build_state(StateSpec(family, z, cfg.m, cfg.params), cfg.trunc))
        row = [float(za)]
        for name in REPORT_FIELDS:
            val = getattr(rep, name)
            row += [val.real, val.imag] if isinstance(val, complex) else [val]
        table.rows.append(row)
    _emit(to_csv(table), cfg.out)
    return EXIT_OK


def cmd_wavefunction(cfg: RunConfig) -> int:
    spec = StateSpec(Family(cfg.family), cfg.z, cfg.m, cfg.params)
    v = build_state(spec, cfg.trunc)
    xs = z_grid(cfg.xmin, cfg.xmax, cfg.points)
    psi = np.atleast_1d(wavefunction(xs, v))
    table = Table(
        [header_line(spec.family, cfg.m, cfg.lam, cfg.phase), f"# z_abs={fmt(cfg.z_abs)}"],
        ["x", "re", "im", "abs2"],
    )
    for x, p in zip(xs, psi):
        table.rows.append([float(x), p.real, p.imag, abs(p) ** 2])
    _emit(to_csv(table), cfg.out)
    return EXIT_OK


def cmd_figure(fig_id: int, cfg: RunConfig, explicit: frozenset[str] = frozenset()) -> int:
    """Figure families and default phases are fixed per figure; an explicit
    phase overrides the default, an explicit m only matters for figure 1."""
    table = figure_table(
        fig_id,
        params=cfg.params,
        z_min=cfg.zmin,
        z_max=cfg.zmax,
        points=cfg.points,
        phase=cfg.phase if "phase" in explicit else None,
        m=cfg.m if "m" in explicit else None,
        trunc=cfg.trunc,
    )
    text = to_csv(table)
    if cfg.format == "svg":
        if cfg.out is None:
            raise ConfigError("--format svg needs --out")
        svg_path = Path(cfg.out)
        svg_path.write_text(to_svg(table))
        svg_path.with_suffix(".csv").write_text(text)  # data always ships alongside
    else:
        _emit(text, cfg.out)
    return EXIT_OK


def cmd_verify(suite: str, cfg: RunConfig) -> int:
    results = run_suite(suite, seed=cfg.seed)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# --- parser -----------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--m", type=int)
    p.add_argument("--lambda", dest="lambda", type=float, help="irrep label, > -1/2 (default 1/2)")
    p.add_argument("--phase", type=float, help="arg z in radians, [0, 2pi)")
    p.add_argument("--z-abs", dest="z_abs", type=float, help="|z| for single-state commands")
    p.add_argument("--zmin", type=float)
    p.add_argument("--zmax", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "svg"])
    p.add_argument("--tail-tol", dest="tail_tol", type=float)
    p.add_argument("--cutoff", type=int, help="minimum Fock cutoff")
    p.add_argument("--seed", type=int, help="seed for randomized checks")
    p.add_argument("--config", help="flat key = value file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="su11cs", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("state", "dump Fock coefficients n, re, im, prob"),
        ("observables", "sweep |z| and tabulate every observable"),
        ("wavefunction", "evaluate the state on the half line"),
    ):
        p = sub.add_parser(name, help=help_)
        _common(p)
        if name == "observables":
            p.add_argument("--source", choices=["oracle", "closed"], help="Fock sums or closed forms")
    p = sub.add_parser("figure", help="regenerate figure data (1-5)")
    p.add_argument("fig_id", type=int, choices=[1, 2, 3, 4, 5])
    _common(p)
    p = sub.add_parser("verify", help="run invariant checks")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    _common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg, explicit = resolve_config(args)
        if args.command == "state":
            return cmd_state(cfg)
        if args.command == "observables":
            return cmd_observables(cfg)
        if args.command == "wavefunction":
            return cmd_wavefunction(cfg)
        if args.command == "figure":
            return cmd_figure(args.fig_id, cfg, explicit)
        return cmd_verify(args.suite, cfg)
    except (ConfigError, FigureScopeError, TruncationError, ConvergenceError, ValueError, OSError) as exc:
        print(f"su11cs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
