"""Command-line front end: ``entrygame {solve,sweep,diagnose,selftest}``.

Configuration comes from an optional flat ``key = value`` file
(``--config``) overridden by command-line flags. Every output file is free
of timestamps so repeated runs diff cleanly.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .diagnostics import IllConditioned, IndeterminateStrategy, classify_strategy, strategic_effects
from .model import MarketParams, ParameterError
from .oracles import duopsony_grid_nash, monopsony_grid, random_draw
from .solve import SolverError, SolveSettings
from .spne import DuopsonyEquilibrium, solve_duopsony, solve_monopsony, solve_spne
from .statics import SweepRow, SweepSpec, dense_grid, run_sweep

log = logging.getLogger("entrygame")

CSV_HEADER = ("param_value", "F", "regime", "d0_det", "d0_acc", "d0_mon", "pi1_det", "pi1_acc",
              "pi2", "pi_p1", "pi_p0", "sw_det", "sw_acc", "sed", "sea", "slope_br2")

EXT = {"table": "txt", "csv": "csv", "json": "json"}
PARAM_KEYS = tuple(f.name for f in fields(MarketParams))
SETTINGS_KEYS = tuple(f.name for f in fields(SolveSettings))


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def _floats(text: str) -> tuple[float, ...]:
    parts = [p for p in text.replace(",", " ").split() if p]
    out = []
    for p in parts:
        num, _, den = p.partition("/")
        out.append(float(num) / float(den) if den else float(num))
    return tuple(out)


def _float(text: str) -> float:
    (v,) = _floats(text)
    return v


@dataclass
class RunConfig:
    params: dict = field(default_factory=dict)
    settings: dict = field(default_factory=dict)
    param: str = "c0"
    grid: tuple[float, ...] = ()
    f_levels: tuple[float, ...] = ()
    dense: int = 0
    d0: tuple[float, ...] = ()
    out: str = ""
    format: str = "table"
    seed: int = 0
    draws: int = 10

    FORMATS = ("table", "csv", "json")

    def set(self, key: str, value: str):
        key = key.strip().replace("-", "_")
        value = value.strip()
        try:
            if key in PARAM_KEYS:
                self.params[key] = value if key == "value_model" else _float(value)
            elif key in SETTINGS_KEYS:
                kind = int if key in ("grid_n", "max_iter", "stage0_grid_n") else float
                self.settings[key] = None if value.lower() == "none" else kind(value)
            elif key in ("param", "out", "format"):
                setattr(self, key, value)
            elif key in ("grid", "f_levels", "d0"):
                vals = _floats(value)
                if not vals:
                    raise ConfigError(key, "must be a nonempty list of numbers")
                setattr(self, key, vals)
            elif key in ("dense", "seed", "draws"):
                setattr(self, key, int(value))
            else:
                raise ConfigError(key, "unknown configuration key")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(key, f"cannot parse {value!r} ({exc})") from None

    def market_params(self) -> MarketParams:
        try:
            return MarketParams(**self.params)
        except ParameterError as exc:
            raise ConfigError(exc.name, str(exc).split(": ", 1)[1]) from None

    def solve_settings(self) -> SolveSettings:
        try:
            return SolveSettings(**self.settings)
        except ValueError as exc:
            raise ConfigError("settings", str(exc)) from None

    def validate(self):
        self.market_params()
        self.solve_settings()
        if self.format not in self.FORMATS:
            raise ConfigError("format", f"must be one of {self.FORMATS}")

    def to_text(self) -> str:
        lines = [f"{k} = {v!r}" if isinstance(v, float) else f"{k} = {v}"
                 for k, v in sorted(self.params.items())]
        lines += [f"{k} = {v!r}" for k, v in sorted(self.settings.items())]
        lines += [f"param = {self.param}", f"format = {self.format}", f"seed = {self.seed}",
                  f"dense = {self.dense}", f"draws = {self.draws}"]
        if self.out:
            lines.append(f"out = {self.out}")
        for key in ("grid", "f_levels", "d0"):
            vals = getattr(self, key)
            if vals:
                lines.append(f"{key} = " + ", ".join(repr(v) for v in vals))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        cfg = cls()
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {n}", f"expected 'key = value', got {raw!r}")
            k, v = line.split("=", 1)
            cfg.set(k, v)
        return cfg


def _num(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return repr(float(v))


def sweep_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        pr = r.profits
        w.writerow([
            _num(r.param_value), _num(r.F), "" if r.regime is None else str(r.regime),
            _num(r.d0_det), _num(r.d0_acc), _num(r.d0_monopsony), _num(r.pi1_det), _num(r.pi1_acc),
            _num(pr and pr.pi2), _num(pr and pr.pi_p1), _num(pr and pr.pi_p0),
            _num(r.profits_det and r.profits_det.sw), _num(r.profits_acc and r.profits_acc.sw),
            _num(r.sed), _num(r.sea), _num(r.slope_br2)])
    return buf.getvalue()


def _jsonable(obj):
    if dataclasses.is_dataclass(obj):
        d = {f.name: _jsonable(getattr(obj, f.name)) for f in fields(obj)}
        if hasattr(obj, "sw"):
            d["sw"] = obj.sw
        return d
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, str):
        return str(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _emit(text: str, cfg: RunConfig, name: str):
    if cfg.out:
        path = Path(cfg.out)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(cfg: RunConfig) -> int:
    params, settings = cfg.market_params(), cfg.solve_settings()
    out = solve_spne(params, settings)
    doc = {
        "regime": str(out.regime), "d0": out.d0, "w0": out.w0, "entered": out.entered,
        "pi1_deter": out.pi1_deter,
        "pi1_accommodate": out.pi1_accommodate if out.accommodate else "infeasible",
        "downstream": _jsonable(out.downstream), "profits": _jsonable(out.profits),
        "deter": _jsonable(out.deter) if out.deter else "infeasible",
        "accommodate": _jsonable(out.accommodate) if out.accommodate else "infeasible",
        "invalid_scan_points": out.invalid_scan_points, "params": _jsonable(params),
    }
    if cfg.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    elif cfg.format == "csv":
        keys = ["regime", "d0", "w0", "entered", "pi1_deter", "pi1_accommodate"]
        pr = doc["profits"]
        text = ",".join(keys + list(pr)) + "\n" + ",".join(
            [str(doc[k]) for k in keys] + [repr(v) for v in pr.values()]) + "\n"
    else:
        down = out.downstream
        lines = [f"regime            {out.regime}",
                 f"d0                {out.d0:.9g}",
                 f"w0                {out.w0:.9g}",
                 f"entered           {out.entered}"]
        if isinstance(down, DuopsonyEquilibrium):
            lines += [f"d1, d2            {down.d1:.9g}, {down.d2:.9g}",
                      f"fixed point       converged={down.report.converged} "
                      f"iterations={down.report.iterations} residual={down.report.residual:.3g}"]
        else:
            lines.append(f"d1 (monopsony)    {down.d1m:.9g}")
        for name, v in (("deter", out.pi1_deter), ("accommodate", out.pi1_accommodate)):
            lines.append(f"pi1 {name:<14}" + ("infeasible" if v is None else f"{v:.9g}"))
        pr = out.profits
        lines += [f"profits           D1={pr.pi1:.6g} D2={pr.pi2:.6g} P1={pr.pi_p1:.6g} "
                  f"P0={pr.pi_p0:.6g} SW={pr.sw:.6g}"]
        text = "\n".join(lines) + "\n"
    _emit(text, cfg, "solve." + EXT[cfg.format])
    return 0


def _sweep_spec(cfg: RunConfig, base: MarketParams, F=None) -> SweepSpec:
    grid = cfg.grid or (dense_grid(cfg.param, cfg.dense) if cfg.dense else ())
    levels = (F,) if F is not None else (base.F,)
    return SweepSpec(parameter=cfg.param, grid=grid, f_levels=levels, base=base)


def cmd_sweep(cfg: RunConfig) -> int:
    base, settings = cfg.market_params(), cfg.solve_settings()
    if cfg.param != "F" and cfg.f_levels:
        levels = cfg.f_levels
    else:
        levels = (None,)
    for F in levels:
        try:
            spec = _sweep_spec(cfg, base, F)
        except ParameterError as exc:
            raise ConfigError(exc.name, str(exc).split(": ", 1)[1]) from None
        rows = run_sweep(spec, settings)
        for r in rows:
            if r.error:
                log.warning("%s=%r F=%r: %s", cfg.param, r.param_value, r.F, r.error)
        tag = f"_F{spec.f_levels[0]!r}" if cfg.param != "F" else ""
        _emit(sweep_csv(rows), cfg, f"sweep_{cfg.param}{tag}.csv")
    return 0


def cmd_diagnose(cfg: RunConfig) -> int:
    params, settings = cfg.market_params(), cfg.solve_settings()
    points = cfg.d0
    if not points:
        out = solve_spne(params, settings)
        points = (out.accommodate.d0 if out.accommodate else out.d0,)
    cols = ("d0", "sed", "sea", "direct", "slope_br2", "slope_br1", "substitutes",
            "deter_label", "accommodate_label", "consistency_ok")
    rows = []
    status = 0
    for d0 in points:
        try:
            d = strategic_effects(params, d0, settings=settings)
        except (SolverError, IllConditioned) as exc:
            log.error("d0=%r: %s", d0, exc)
            rows.append([repr(d0)] + ["error"] * (len(cols) - 1))
            status = 1
            continue
        labels = []
        for mode in ("deter", "accommodate"):
            try:
                labels.append(str(classify_strategy(d, mode)))
            except IndeterminateStrategy:
                labels.append("indeterminate")
        if not d.consistency_ok:
            log.warning("d0=%r: sign(SEA) != sign(SED)*sign(dBR2/dd1), sign identity fails", d0)
        rows.append([repr(d0), repr(d.sed), repr(d.sea), repr(d.direct_effect), repr(d.slope_br2),
                     repr(d.slope_br1), str(d.substitutes), *labels, str(d.consistency_ok)])
    if cfg.format == "json":
        text = json.dumps([dict(zip(cols, r)) for r in rows], indent=2) + "\n"
    elif cfg.format == "csv":
        text = "\n".join(",".join(r) for r in [list(cols)] + rows) + "\n"
    else:
        width = [max(len(str(x)) for x in col) for col in zip(cols, *rows)]
        text = "\n".join("  ".join(str(x).ljust(w) for x, w in zip(r, width))
                         for r in [list(cols)] + rows) + "\n"
    _emit(text, cfg, "diagnose." + EXT[cfg.format])
    return status


def cmd_selftest(cfg: RunConfig) -> int:
    """Oracle equivalence on seeded random draws (grid step 1e-3, tolerance 5e-3)."""
    rng = np.random.default_rng(cfg.seed)
    failures = 0
    for n in range(cfg.draws):
        p, d0 = random_draw(rng)
        mono = solve_monopsony(p, d0)
        m_ref = monopsony_grid(p, d0, step=1e-3)
        eq = solve_duopsony(p, d0)
        r1, r2, _ = duopsony_grid_nash(p, d0)
        ok = (abs(mono.d1m - m_ref) <= 5e-3 and eq.converged
              and abs(eq.d1 - r1) <= 5e-3 and abs(eq.d2 - r2) <= 5e-3)
        failures += not ok
        print(f"draw {n}: {'PASS' if ok else 'FAIL'}  d1m={mono.d1m:.5f}/{m_ref:.5f} "
              f"d1={eq.d1:.5f}/{r1:.5f} d2={eq.d2:.5f}/{r2:.5f}")
    print(f"{cfg.draws - failures}/{cfg.draws} draws match the grid oracles")
    return 1 if failures else 0


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "diagnose": cmd_diagnose,
            "selftest": cmd_selftest}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="entrygame", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", help="flat key = value configuration file")
    ap.add_argument("--write-config", metavar="PATH", help="write the effective configuration")
    ap.add_argument("--param", choices=("c0", "delta", "F"))
    ap.add_argument("--grid", help="comma-separated sweep values (fractions like 5/6 allowed)")
    ap.add_argument("--f-levels", help="comma-separated entry costs, one CSV per level")
    ap.add_argument("--dense", type=int, help="use N equispaced points over the default range")
    ap.add_argument("--d0", help="comma-separated d0 values for diagnose")
    ap.add_argument("--out", help="output directory (default: stdout)")
    ap.add_argument("--format", choices=RunConfig.FORMATS)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--draws", type=int)
    for key in PARAM_KEYS:
        ap.add_argument(f"--{key.replace('_', '-')}", dest=f"p_{key}", metavar="X")
    for key in SETTINGS_KEYS:
        ap.add_argument(f"--{key.replace('_', '-')}", dest=f"s_{key}", metavar="X")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.parse(Path(args.config).read_text()) if args.config else RunConfig()
    for key, value in vars(args).items():
        if value is None or key in ("command", "config", "write_config", "verbose"):
            continue
        name = key[2:] if key.startswith(("p_", "s_")) else key
        cfg.set(name, str(value))
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args)
        if args.write_config:
            Path(args.write_config).write_text(cfg.to_text())
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
