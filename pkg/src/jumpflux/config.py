"""Scenario files: a strict YAML mapping with fixed sections.

Example (only ``flux`` is mandatory; ``domain`` and ``initial`` are needed by
the commands that solve)::

    flux:
      kind: heaviside          # heaviside | indicator | burgers | linear | table
      state_range: [-1, 2]
    domain: {x_lo: -20, x_hi: 20, cells: 4000, boundary: constant}
    initial: {kind: example1}
    times: {t_end: 1.0, snapshots: [0.5]}

Unknown keys are rejected with their dotted path.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import yaml

from . import oracles
from .extremal import ExtremalParams
from .flux import (
    JumpFlux,
    JumpPoint,
    burgers_flux,
    heaviside_flux,
    indicator_flux,
    linear_flux,
    make_jump_flux,
)
from .parametrize import WeightAssignment
from .pl import PLFunction
from .scheme import GridSolution, SchemeParams


class ConfigError(ValueError):
    def __init__(self, path: str, message: str, line: int | None = None, column: int | None = None):
        self.path, self.line, self.column = path, line, column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{path}: {message}{where}" if path else f"{message}{where}")


_REQUIRED = object()

SCHEMA: dict[str, dict[str, Any]] = {
    "flux": {
        "kind": _REQUIRED,
        "state_range": _REQUIRED,
        "point": None,
        "location": 0.0,
        "speed": 1.0,
        "samples": 401,
        "jumps": None,
        "pieces": None,
    },
    "parametrization": {"weights": None, "theta": 0.5},
    "regularization": {"r": 64.0},
    "domain": {
        "x_lo": _REQUIRED,
        "x_hi": _REQUIRED,
        "cells": _REQUIRED,
        "boundary": "constant",
        "far_field": None,
    },
    "initial": {
        "kind": _REQUIRED,
        "left": 0.0,
        "right": 1.0,
        "location": 0.0,
        "mean": 0.5,
        "amplitude": 0.4,
        "wavenumber": 1.0,
        "value": 0.0,
        "x": None,
        "u": None,
    },
    "times": {"t_end": 1.0, "snapshots": []},
    "scheme": {"cfl": 0.9, "flux": "godunov"},
    "extremal": {
        "r0": 16.0,
        "r_growth": 2.0,
        "r_max": None,
        "d_offset": 1.0,
        "radius": None,
        "eps_stop": 1e-3,
        "max_iter": 8,
        "min_iter": 2,
        "window": None,
        "sup_bound": None,
        "inf_bound": None,
    },
}
REQUIRED_SECTIONS = ("flux",)
OPTIONAL_SECTIONS = ("domain", "initial", "extremal")

FLUX_KINDS = ("heaviside", "indicator", "burgers", "linear", "table")
INITIAL_KINDS = ("example1", "example2", "heaviside_riemann", "sine", "constant", "custom_table")


def _number(path: str, value, positive=False, integer=False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(path, f"expected an integer, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(path, f"must be positive, got {value!r}")
    return int(value) if integer else float(value)


def _numbers(path: str, value, length: int | None = None) -> list[float]:
    if not isinstance(value, (list, tuple)):
        raise ConfigError(path, f"expected a list of numbers, got {value!r}")
    if length is not None and len(value) != length:
        raise ConfigError(path, f"expected {length} entries, got {len(value)}")
    return [_number(f"{path}[{i}]", v) for i, v in enumerate(value)]


@dataclass
class ScenarioConfig:
    flux: dict
    parametrization: dict
    regularization: dict
    domain: dict | None
    initial: dict | None
    times: dict
    scheme: dict
    extremal: dict | None
    source_hash: str = field(default="")

    def require(self, section: str) -> dict:
        value = getattr(self, section)
        if value is None:
            raise ConfigError(section, "required section is missing for this command")
        return value

    # ---- builders --------------------------------------------------------

    def build_flux(self) -> JumpFlux:
        fx = self.flux
        rng = tuple(fx["state_range"])
        kind = fx["kind"]
        if kind == "heaviside":
            return heaviside_flux(rng, 0.5 if fx["point"] is None else fx["point"])
        if kind == "indicator":
            return indicator_flux(rng, fx["location"])
        if kind == "burgers":
            return burgers_flux(rng, fx["samples"])
        if kind == "linear":
            return linear_flux(fx["speed"], rng)
        jumps = [JumpPoint(j["location"], j["left"], j["point"], j["right"]) for j in fx["jumps"] or []]
        pieces = [PLFunction(p["x"], p["y"]) for p in fx["pieces"]]
        return make_jump_flux(1, rng, jumps, pieces)

    def weights(self) -> WeightAssignment | None:
        w = self.parametrization["weights"]
        return None if w is None else WeightAssignment(tuple(w))

    @property
    def theta(self) -> float:
        return self.parametrization["theta"]

    def scheme_params(self) -> SchemeParams:
        return SchemeParams(self.scheme["cfl"], self.scheme["flux"])

    def initial_function(self):
        ini = self.require("initial")
        kind = ini["kind"]
        if kind == "example1":
            return oracles.example1_initial
        if kind == "example2":
            return lambda x: oracles.example2_solution(0.0, x)
        if kind == "heaviside_riemann":
            a, b, loc = ini["left"], ini["right"], ini["location"]
            return lambda x: np.where(np.asarray(x) < loc, a, b)
        if kind == "sine":
            m, amp, k = ini["mean"], ini["amplitude"], ini["wavenumber"]
            return lambda x: m + amp * np.sin(2 * np.pi * k * np.asarray(x))
        if kind == "constant":
            c = ini["value"]
            return lambda x: np.full(np.shape(x), c, dtype=float)
        xs, us = np.asarray(ini["x"], float), np.asarray(ini["u"], float)
        return lambda x: np.interp(x, xs, us)

    def initial_bounds(self) -> tuple[float, float]:
        """Essential (sup, inf) of the initial function over the whole line."""
        ini = self.require("initial")
        kind = ini["kind"]
        if kind in ("example1", "example2"):
            return 1.0, 0.0
        if kind == "heaviside_riemann":
            return max(ini["left"], ini["right"]), min(ini["left"], ini["right"])
        if kind == "sine":
            return ini["mean"] + abs(ini["amplitude"]), ini["mean"] - abs(ini["amplitude"])
        if kind == "constant":
            return ini["value"], ini["value"]
        return max(ini["u"]), min(ini["u"])

    def build_initial(self, cells: int | None = None) -> GridSolution:
        d = self.require("domain")
        return GridSolution.from_function(
            self.initial_function(),
            d["x_lo"],
            d["x_hi"],
            cells or d["cells"],
            d["boundary"],
            d["far_field"],
        )

    def extremal_params(self) -> ExtremalParams:
        e = dict(self.extremal or SCHEMA["extremal"])
        sup, inf = self.initial_bounds()
        if e["sup_bound"] is None:
            e["sup_bound"] = sup
        if e["inf_bound"] is None:
            e["inf_bound"] = inf
        window = None if e["window"] is None else tuple(e["window"])
        return ExtremalParams(
            r0=e["r0"],
            r_growth=e["r_growth"],
            r_max=e["r_max"],
            d_offset=e["d_offset"],
            sup_bound=e["sup_bound"],
            inf_bound=e["inf_bound"],
            radius=e["radius"],
            eps_stop=e["eps_stop"],
            max_iter=e["max_iter"],
            min_iter=e["min_iter"],
            window=window,
            weights=None if self.parametrization["weights"] is None else tuple(self.parametrization["weights"]),
            theta=self.theta,
            scheme=self.scheme_params(),
        )

    @property
    def t_end(self) -> float:
        return self.times["t_end"]

    @property
    def snapshots(self) -> list[float]:
        return list(self.times["snapshots"])


def _fill(section: str, data) -> dict:
    schema = SCHEMA[section]
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(section, "expected a mapping")
    for key in data:
        if key not in schema:
            raise ConfigError(f"{section}.{key}", "unknown key")
    out = {}
    for key, default in schema.items():
        if key in data:
            out[key] = data[key]
        elif default is _REQUIRED:
            raise ConfigError(f"{section}.{key}", "required key is missing")
        else:
            out[key] = list(default) if isinstance(default, list) else default
    return out


def _validate_flux(fx: dict):
    if fx["kind"] not in FLUX_KINDS:
        raise ConfigError("flux.kind", f"unknown flux {fx['kind']!r}; expected one of {FLUX_KINDS}")
    rng = _numbers("flux.state_range", fx["state_range"], 2)
    if not rng[0] < rng[1]:
        raise ConfigError("flux.state_range", "needs u_min < u_max")
    fx["state_range"] = rng
    if fx["point"] is not None:
        fx["point"] = _number("flux.point", fx["point"])
    fx["location"] = _number("flux.location", fx["location"])
    fx["speed"] = _number("flux.speed", fx["speed"])
    fx["samples"] = _number("flux.samples", fx["samples"], positive=True, integer=True)
    if fx["kind"] == "table":
        if fx["pieces"] is None:
            raise ConfigError("flux.pieces", "required for a table flux")
        jumps = fx["jumps"] or []
        for i, j in enumerate(jumps):
            path = f"flux.jumps[{i}]"
            if not isinstance(j, dict):
                raise ConfigError(path, "expected a mapping")
            for key in j:
                if key not in ("location", "left", "point", "right"):
                    raise ConfigError(f"{path}.{key}", "unknown key")
            for key in ("location", "left", "point", "right"):
                if key not in j:
                    raise ConfigError(f"{path}.{key}", "required key is missing")
                j[key] = _number(f"{path}.{key}", j[key])
        for i, p in enumerate(fx["pieces"]):
            path = f"flux.pieces[{i}]"
            if not isinstance(p, dict) or set(p) != {"x", "y"}:
                raise ConfigError(path, "expected a mapping with exactly the keys x and y")
            p["x"] = _numbers(f"{path}.x", p["x"])
            p["y"] = _numbers(f"{path}.y", p["y"], len(p["x"]))


def _validate_domain(dom: dict):
    dom["x_lo"] = _number("domain.x_lo", dom["x_lo"])
    dom["x_hi"] = _number("domain.x_hi", dom["x_hi"])
    if not dom["x_hi"] > dom["x_lo"]:
        raise ConfigError("domain.x_hi", "must exceed domain.x_lo")
    dom["cells"] = _number("domain.cells", dom["cells"], integer=True)
    if dom["cells"] < 2:
        raise ConfigError("domain.cells", "need at least 2 cells")
    if dom["boundary"] not in ("periodic", "constant"):
        raise ConfigError("domain.boundary", "must be 'periodic' or 'constant'")
    if dom["far_field"] is not None:
        dom["far_field"] = _numbers("domain.far_field", dom["far_field"], 2)


def _validate_initial(ini: dict):
    if ini["kind"] not in INITIAL_KINDS:
        raise ConfigError("initial.kind", f"unknown initial data {ini['kind']!r}; expected one of {INITIAL_KINDS}")
    for key in ("left", "right", "location", "mean", "amplitude", "wavenumber", "value"):
        ini[key] = _number(f"initial.{key}", ini[key])
    if ini["kind"] == "custom_table":
        if ini["x"] is None or ini["u"] is None:
            raise ConfigError("initial.x", "custom_table needs x and u")
        ini["x"] = _numbers("initial.x", ini["x"])
        ini["u"] = _numbers("initial.u", ini["u"], len(ini["x"]))
        if len(ini["x"]) < 1 or np.any(np.diff(ini["x"]) <= 0):
            raise ConfigError("initial.x", "table abscissae must be strictly increasing")


def _validate(cfg: dict) -> dict:
    for key in cfg:
        if key not in SCHEMA:
            raise ConfigError(key, "unknown key")
    for key in REQUIRED_SECTIONS:
        if key not in cfg:
            raise ConfigError(key, "required section is missing")
    out = {name: _fill(name, cfg.get(name)) for name in SCHEMA if name in cfg or name not in OPTIONAL_SECTIONS}
    _validate_flux(out["flux"])
    for name, check in (("domain", _validate_domain), ("initial", _validate_initial)):
        if name in out:
            check(out[name])
        else:
            out[name] = None

    par = out["parametrization"]
    if par["weights"] is not None:
        par["weights"] = _numbers("parametrization.weights", par["weights"])
        if any(w <= 0 for w in par["weights"]):
            raise ConfigError("parametrization.weights", "weights must be positive")
    par["theta"] = _number("parametrization.theta", par["theta"])
    if not 0 < par["theta"] < 1:
        raise ConfigError("parametrization.theta", "must lie in (0, 1)")
    out["regularization"]["r"] = _number("regularization.r", out["regularization"]["r"])
    if out["regularization"]["r"] < 1:
        raise ConfigError("regularization.r", "must be >= 1")

    tm = out["times"]
    tm["t_end"] = _number("times.t_end", tm["t_end"])
    if tm["t_end"] < 0:
        raise ConfigError("times.t_end", "must be non-negative")
    tm["snapshots"] = _numbers("times.snapshots", tm["snapshots"])
    if any(not 0 < t <= tm["t_end"] for t in tm["snapshots"]):
        raise ConfigError("times.snapshots", "snapshot times must lie in (0, t_end]")

    sch = out["scheme"]
    sch["cfl"] = _number("scheme.cfl", sch["cfl"])
    if not 0 < sch["cfl"] <= 1:
        raise ConfigError("scheme.cfl", "must lie in (0, 1]")
    if sch["flux"] not in ("godunov", "engquist_osher"):
        raise ConfigError("scheme.flux", "must be 'godunov' or 'engquist_osher'")

    if "extremal" in out:
        ex = out["extremal"]
        for key in ("r0", "r_growth", "d_offset", "eps_stop"):
            ex[key] = _number(f"extremal.{key}", ex[key], positive=True)
        for key in ("max_iter", "min_iter"):
            ex[key] = _number(f"extremal.{key}", ex[key], positive=True, integer=True)
        for key in ("r_max", "radius", "sup_bound", "inf_bound"):
            if ex[key] is not None:
                ex[key] = _number(f"extremal.{key}", ex[key])
        if ex["window"] is not None:
            ex["window"] = _numbers("extremal.window", ex["window"], 2)
    else:
        out["extremal"] = None
    return out


def parse_config(text: str) -> ScenarioConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark else None
        col = mark.column + 1 if mark else None
        raise ConfigError("", f"syntax error: {exc.problem or exc}", line, col) from None
    except yaml.YAMLError as exc:
        raise ConfigError("", f"syntax error: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("", "a scenario must be a mapping of sections")
    out = _validate(data)
    digest = hashlib.sha256(text.encode()).hexdigest()
    return ScenarioConfig(**out, source_hash=digest)


def load_config(path) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
