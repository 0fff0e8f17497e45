"""Scenario configuration, execution and the built-in figure presets.

A scenario is fully textual (literals for the basis, rates and initial
data) so it can live in a JSON file; running one parses and validates the
configuration, simulates, attaches alpha-level bands and writes the
requested CSV/JSON/SVG outputs.

Presets ``fig2`` through ``fig16`` reproduce the library's reference
figures: fig2-fig5 the decaying and growing linear flows under the two
products, fig6-fig10 the oscillator (two phase-plane projections, the
coefficient curves, both solution bands) and fig11-fig15 the same set for
the predator-prey model; fig16 runs the predator-prey linearisation on the
oscillator path.  Captions fix the time span only for the dynamic systems
(``[0, 50]``); the linear-flow presets use ``[0, 10]``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path as FsPath

import numpy as np

from ..core import BasisNumber, LcNumber, is_asymmetric
from ..dynamics import (
    LinearParams,
    LvParams,
    OscillatorParams,
    Trajectory,
    linearized_lv,
    simulate_system,
)
from .exports import band_color, emit_svg, export_csv, export_json, trajectory_table
from .literals import LiteralError, parse_fuzzy_literal, print_literal

__all__ = [
    "ConfigError",
    "PRESETS",
    "ScenarioConfig",
    "load_config",
    "preset_config",
    "resolve_out_dir",
    "run_scenario",
]

DEFAULT_ALPHAS = tuple(i / 10 for i in range(11))
MAX_EXPORT_ROWS = 2001


class ConfigError(ValueError):
    """A scenario configuration that cannot be run."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Textual description of one run; every literal is parsed at run time."""

    system: str
    basis: str
    params: dict = field(default_factory=dict)
    initial: dict = field(default_factory=dict)
    t_span: tuple[float, float] = (0.0, 10.0)
    dt: float = 1e-3
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    formats: tuple[str, ...] = ("csv", "json", "svg")
    name: str = "scenario"
    method: str = "auto"
    plot: str = "time-series"
    stride: int | None = None
    out_dir: str | None = None


_SYSTEM_ALIASES = {
    "lv": "lotka_volterra",
    "lotka-volterra": "lotka_volterra",
    "lotka_volterra": "lotka_volterra",
    "linear": "linear",
    "linear-psi": "linear_psi",
    "linear_psi": "linear_psi",
    "oscillator": "oscillator",
}

_CONFIG_KEYS = {
    "system",
    "basis",
    "params",
    "initial",
    "t_span",
    "dt",
    "alphas",
    "formats",
    "name",
    "method",
    "plot",
    "stride",
    "out_dir",
}


def load_config(source) -> ScenarioConfig:
    """Build a ScenarioConfig from a JSON file path or a plain dict."""
    import json

    if isinstance(source, dict):
        raw = dict(source)
    else:
        try:
            with open(source) as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {source}: {exc}") from exc
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    if "system" not in raw or "basis" not in raw:
        raise ConfigError("a scenario needs at least 'system' and 'basis'")
    raw["system"] = _normalize_system(raw["system"])
    for key in ("t_span", "alphas", "formats"):
        if key in raw:
            raw[key] = tuple(raw[key])
    return ScenarioConfig(**raw)


def _normalize_system(system: str) -> str:
    try:
        return _SYSTEM_ALIASES[system]
    except KeyError:
        raise ConfigError(f"unknown system {system!r}") from None


def _parse_element(cfg_field: str, text) -> LcNumber:
    try:
        value = parse_fuzzy_literal(str(text))
    except LiteralError as exc:
        raise ConfigError(f"bad literal for {cfg_field!r}: {exc}") from exc
    if not isinstance(value, LcNumber):
        raise ConfigError(f"{cfg_field!r} must be an element literal, got a basis")
    return value


def _validated(cfg: ScenarioConfig):
    try:
        basis = parse_fuzzy_literal(cfg.basis)
    except LiteralError as exc:
        raise ConfigError(f"bad basis literal: {exc}") from exc
    if not isinstance(basis, BasisNumber):
        raise ConfigError("the 'basis' entry must be a tri(...) or trap(...) literal")
    if not is_asymmetric(basis):
        raise ConfigError("the basis fuzzy number is symmetric; the scenario is rejected")
    if len(cfg.t_span) != 2 or not cfg.t_span[1] > cfg.t_span[0]:
        raise ConfigError(f"t_span must be a nonempty increasing interval, got {cfg.t_span}")
    if cfg.dt <= 0.0:
        raise ConfigError(f"dt must be positive, got {cfg.dt}")
    if not cfg.alphas:
        raise ConfigError("alpha grid must not be empty")
    alphas = tuple(float(a) for a in cfg.alphas)
    if any(not 0.0 <= a <= 1.0 for a in alphas) or list(alphas) != sorted(alphas):
        raise ConfigError(f"alpha grid must be ascending within [0, 1], got {alphas}")
    for fmt in cfg.formats:
        if fmt not in ("csv", "json", "svg"):
            raise ConfigError(f"unknown output format {fmt!r}")
    return basis, alphas


def _build_params(cfg: ScenarioConfig):
    system = _normalize_system(cfg.system)
    if system in ("linear", "linear_psi"):
        if "lambda" not in cfg.params or "w" not in cfg.initial:
            raise ConfigError(f"{system} needs params['lambda'] and initial['w']")
        return system, LinearParams(
            _parse_element("lambda", cfg.params["lambda"]),
            _parse_element("w", cfg.initial["w"]),
        )
    if system == "oscillator":
        if "x" not in cfg.initial or "y" not in cfg.initial:
            raise ConfigError("oscillator needs initial['x'] and initial['y']")
        kwargs = {}
        if "c1" in cfg.params:
            kwargs["c1"] = _parse_element("c1", cfg.params["c1"])
        if "c2" in cfg.params:
            kwargs["c2"] = _parse_element("c2", cfg.params["c2"])
        return system, OscillatorParams(
            _parse_element("x", cfg.initial["x"]),
            _parse_element("y", cfg.initial["y"]),
            **kwargs,
        )
    if system == "lotka_volterra":
        needed = ("alpha", "beta", "a", "b")
        if any(k not in cfg.params for k in needed) or any(
            k not in cfg.initial for k in ("x", "y")
        ):
            raise ConfigError("lotka_volterra needs params alpha/beta/a/b and initial x/y")
        return system, LvParams(
            _parse_element("alpha", cfg.params["alpha"]),
            _parse_element("beta", cfg.params["beta"]),
            _parse_element("a", cfg.params["a"]),
            _parse_element("b", cfg.params["b"]),
            _parse_element("x", cfg.initial["x"]),
            _parse_element("y", cfg.initial["y"]),
        )
    raise ConfigError(f"unknown system {cfg.system!r}")


def _export_indices(n: int, stride: int | None) -> list[int]:
    if stride is None:
        stride = max(1, math.ceil((n - 1) / (MAX_EXPORT_ROWS - 1))) if n > 1 else 1
    if stride < 1:
        raise ConfigError(f"stride must be positive, got {stride}")
    idx = list(range(0, n, stride))
    if idx[-1] != n - 1:
        idx.append(n - 1)
    return idx


def resolve_out_dir(explicit=None, cfg_dir=None) -> FsPath:
    """Output directory: explicit flag, then config, then $RFA_OUT_DIR."""
    target = explicit or cfg_dir or os.environ.get("RFA_OUT_DIR") or "rfa_out"
    path = FsPath(target)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _svg_series(cfg: ScenarioConfig, traj: Trajectory, idx):
    """Polyline series plus axis labels for the configured plot kind."""
    sel = np.asarray(idx)
    ts = traj.times[sel]
    kind, _, detail = cfg.plot.partition(":")
    series = []
    if kind == "time-series":
        name = detail or traj.names[0]
        if name not in traj.names:
            raise ConfigError(f"unknown variable {name!r} in plot {cfg.plot!r}")
        bands = traj.bands[name]
        for j, alpha in enumerate(traj.alphas):
            stroke = band_color(alpha)
            series.append((ts, bands[sel, j, 0], stroke, 1.0))
            series.append((ts, bands[sel, j, 1], stroke, 1.0))
        series.append((ts, traj.component(name)[0][sel], "#000000", 1.6))
        return series, "t", name
    if kind == "phase":
        if len(traj.names) != 2:
            raise ConfigError("phase plots need a two-variable system")
        x_name, y_name = traj.names
        if detail == "x-vs-s":
            fuzzy, crisp, fuzzy_horizontal = x_name, y_name, True
        elif detail == "r-vs-y":
            fuzzy, crisp, fuzzy_horizontal = y_name, x_name, False
        else:
            raise ConfigError(f"unknown phase projection {detail!r}")
        bands = traj.bands[fuzzy]
        crisp_re = traj.component(crisp)[0][sel]
        fuzzy_re = traj.component(fuzzy)[0][sel]
        for j, alpha in enumerate(traj.alphas):
            stroke = band_color(alpha)
            for edge in (0, 1):
                band = bands[sel, j, edge]
                if fuzzy_horizontal:
                    series.append((band, crisp_re, stroke, 1.0))
                else:
                    series.append((crisp_re, band, stroke, 1.0))
        if fuzzy_horizontal:
            series.append((fuzzy_re, crisp_re, "#000000", 1.6))
            return series, fuzzy, crisp
        series.append((crisp_re, fuzzy_re, "#000000", 1.6))
        return series, crisp, fuzzy
    if kind == "components":
        strokes = ("#000000", "#777777", "#222266", "#884444")
        k = 0
        for name in traj.names:
            re, fu = traj.component(name)
            series.append((ts, re[sel], strokes[k % 4], 1.2))
            series.append((ts, fu[sel], strokes[(k + 1) % 4], 1.2))
            k += 2
        return series, "t", "coefficients"
    raise ConfigError(f"unknown plot kind {cfg.plot!r}")


def run_scenario(cfg: ScenarioConfig, out_dir=None, formats=None):
    """Validate, simulate, export.  Returns ``(table, written paths)``."""
    basis, alphas = _validated(cfg)
    system, params = _build_params(cfg)
    traj = simulate_system(
        system,
        params,
        cfg.t_span,
        dt=cfg.dt,
        method=cfg.method,
        basis=basis,
        alphas=alphas,
    )
    idx = _export_indices(len(traj), cfg.stride)
    table = trajectory_table(traj, idx)
    chosen = tuple(formats) if formats is not None else cfg.formats
    for fmt in chosen:
        if fmt not in ("csv", "json", "svg"):
            raise ConfigError(f"unknown output format {fmt!r}")
    written: list[FsPath] = []
    if chosen:
        directory = resolve_out_dir(out_dir, cfg.out_dir)
        if "csv" in chosen:
            target = directory / f"{cfg.name}.csv"
            export_csv(table, target)
            written.append(target)
        if "json" in chosen:
            target = directory / f"{cfg.name}.json"
            export_json(table, target)
            written.append(target)
        if "svg" in chosen:
            target = directory / f"{cfg.name}.svg"
            series, x_label, y_label = _svg_series(cfg, traj, idx)
            emit_svg(series, target, x_label, y_label)
            written.append(target)
    return table, written


# ---------------------------------------------------------------------------
# presets

_DECAY_BASIS = "tri(-0.5;0;0.51)"
_OSC_BASIS = "tri(-1;0;1.01)"

_LV_KWARGS = dict(
    system="lotka_volterra",
    basis=_DECAY_BASIS,
    params={
        "alpha": "0.25 + 0.001*A",
        "beta": "0.18 + 0.003*A",
        "a": "0.01",
        "b": "0.007",
    },
    initial={"x": "100 + 5*A", "y": "30 + 2*A"},
    t_span=(0.0, 50.0),
)

_OSC_KWARGS = dict(
    system="oscillator",
    basis=_OSC_BASIS,
    initial={"x": "100 + 2*A", "y": "100 + 2*A"},
    t_span=(0.0, 50.0),
)


def _linearized_lv_config() -> ScenarioConfig:
    lv = LvParams(
        alpha=_parse_element("alpha", _LV_KWARGS["params"]["alpha"]),
        beta=_parse_element("beta", _LV_KWARGS["params"]["beta"]),
        a=_parse_element("a", _LV_KWARGS["params"]["a"]),
        b=_parse_element("b", _LV_KWARGS["params"]["b"]),
        x0=_parse_element("x", _LV_KWARGS["initial"]["x"]),
        y0=_parse_element("y", _LV_KWARGS["initial"]["y"]),
    )
    osc = linearized_lv(lv)
    return ScenarioConfig(
        system="oscillator",
        basis=_DECAY_BASIS,
        params={"c1": print_literal(osc.c1), "c2": print_literal(osc.c2)},
        initial={"x": print_literal(osc.x0), "y": print_literal(osc.y0)},
        t_span=(0.0, 50.0),
        name="fig16",
        plot="phase:x-vs-s",
    )


PRESETS: dict[str, ScenarioConfig] = {
    "fig2": ScenarioConfig(
        system="linear",
        basis=_DECAY_BASIS,
        params={"lambda": "-0.5 + 0.8*A"},
        initial={"w": "2 + 2*A"},
        name="fig2",
        plot="time-series:w",
    ),
    "fig3": ScenarioConfig(
        system="linear_psi",
        basis=_DECAY_BASIS,
        params={"lambda": "-0.5 + 0.8*A"},
        initial={"w": "2 + 2*A"},
        name="fig3",
        plot="time-series:w",
    ),
    "fig4": ScenarioConfig(
        system="linear",
        basis=_DECAY_BASIS,
        params={"lambda": "0.5 + 1*A"},
        initial={"w": "2 + 2*A"},
        name="fig4",
        plot="time-series:w",
    ),
    "fig5": ScenarioConfig(
        system="linear_psi",
        basis=_DECAY_BASIS,
        params={"lambda": "0.5 + 1*A"},
        initial={"w": "2 + 2*A"},
        name="fig5",
        plot="time-series:w",
    ),
    "fig6": ScenarioConfig(**_OSC_KWARGS, name="fig6", plot="phase:x-vs-s"),
    "fig7": ScenarioConfig(**_OSC_KWARGS, name="fig7", plot="phase:r-vs-y"),
    "fig8": ScenarioConfig(**_OSC_KWARGS, name="fig8", plot="components"),
    "fig9": ScenarioConfig(**_OSC_KWARGS, name="fig9", plot="time-series:x"),
    "fig10": ScenarioConfig(**_OSC_KWARGS, name="fig10", plot="time-series:y"),
    "fig11": ScenarioConfig(**_LV_KWARGS, name="fig11", plot="phase:x-vs-s"),
    "fig12": ScenarioConfig(**_LV_KWARGS, name="fig12", plot="phase:r-vs-y"),
    "fig13": ScenarioConfig(**_LV_KWARGS, name="fig13", plot="components"),
    "fig14": ScenarioConfig(**_LV_KWARGS, name="fig14", plot="time-series:x"),
    "fig15": ScenarioConfig(**_LV_KWARGS, name="fig15", plot="time-series:y"),
    "fig16": _linearized_lv_config(),
}


def preset_config(fig_id: str, **overrides) -> ScenarioConfig:
    try:
        cfg = PRESETS[fig_id]
    except KeyError:
        raise ConfigError(
            f"unknown preset {fig_id!r}; choose one of {', '.join(sorted(PRESETS))}"
        ) from None
    return replace(cfg, **overrides) if overrides else cfg
