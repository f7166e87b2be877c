"""Run configuration: flat key-value files with CLI overrides.

A config file is plain text, one `key = value` per line, `#` comments.
Recognized keys (defaults in parentheses):

    potential.lambda (100.0)     potential.a (1.0)
    initial_state.q (1)
    expansion.n_poles (100)
    solver.tol (1e-12)
    quadrature.r_max (4000*a)    quadrature.abs_tol (1e-6)
    quadrature.rel_tol (1e-8)    quadrature.min_points_per_oscillation (20)
    times (0.2, 0.5, 1.0, 2.0)   times.units (lifetime | natural)
    grid.r_min (0.0)             grid.r_max (4000.0)
    grid.n_points (4000)
    output.format (csv | json)   output.path (.)
    unitarity.deficit_bound (1e-3)

Times given in lifetime units are multiplied by tau = 1/Gamma_1 once the
poles are solved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError

__all__ = ["RunConfig", "load_config", "parse_config_text", "default_config"]

_UNITS = ("lifetime", "natural")
_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    lam: float = 100.0
    a: float = 1.0
    q: int = 1
    n_poles: int = 100
    solver_tol: float = 1e-12
    r_max: float | None = None       # quadrature cutoff; None -> 4000*a
    abs_tol: float = 1e-6
    rel_tol: float = 1e-8
    min_points_per_oscillation: int = 20
    times: tuple = (0.2, 0.5, 1.0, 2.0)
    time_units: str = "lifetime"
    grid_r_min: float = 0.0
    grid_r_max: float = 4000.0
    grid_n_points: int = 4000
    output_format: str = "csv"
    output_path: str = "."
    deficit_bound: float = 1e-3
    time_labels: tuple = field(default=())  # original literals, for file names

    def validate(self) -> "RunConfig":
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise ConfigError(f"potential.lambda must be positive, got {self.lam}")
        if not (self.a > 0.0 and math.isfinite(self.a)):
            raise ConfigError(f"potential.a must be positive, got {self.a}")
        if self.q < 1:
            raise ConfigError(f"initial_state.q must be >= 1, got {self.q}")
        if self.n_poles < 1:
            raise ConfigError(f"expansion.n_poles must be >= 1, got {self.n_poles}")
        if self.solver_tol <= 0.0:
            raise ConfigError(f"solver.tol must be positive, got {self.solver_tol}")
        if self.r_max is not None and self.r_max <= self.a:
            raise ConfigError(f"quadrature.r_max must exceed a, got {self.r_max}")
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ConfigError("quadrature tolerances must be positive")
        if self.min_points_per_oscillation < 8:
            raise ConfigError("quadrature.min_points_per_oscillation must be >= 8")
        if not self.times:
            raise ConfigError("times must be non-empty")
        if any(t < 0.0 for t in self.times):
            raise ConfigError("times must be non-negative")
        if any(t2 <= t1 for t1, t2 in zip(self.times, self.times[1:])):
            raise ConfigError("times must be strictly increasing")
        if self.time_units not in _UNITS:
            raise ConfigError(f"times.units must be one of {_UNITS}")
        if self.grid_n_points < 2:
            raise ConfigError("grid.n_points must be >= 2")
        if not 0.0 <= self.grid_r_min < self.grid_r_max:
            raise ConfigError("grid range must satisfy 0 <= r_min < r_max")
        if self.output_format not in _FORMATS:
            raise ConfigError(f"output.format must be one of {_FORMATS}")
        if self.deficit_bound <= 0.0:
            raise ConfigError("unitarity.deficit_bound must be positive")
        return self

    def label_for(self, value: float) -> str:
        """Stable file-name tag for a time in the configured units."""
        for lit, v in zip(self.time_labels, self.times):
            if v == value:
                text = lit
                break
        else:
            text = repr(float(value))
        suffix = "tau" if self.time_units == "lifetime" else ""
        return (text + suffix).replace(".", "p").replace("-", "m")


_KEY_PARSERS = {
    "potential.lambda": ("lam", float),
    "potential.a": ("a", float),
    "initial_state.q": ("q", int),
    "expansion.n_poles": ("n_poles", int),
    "solver.tol": ("solver_tol", float),
    "quadrature.r_max": ("r_max", float),
    "quadrature.abs_tol": ("abs_tol", float),
    "quadrature.rel_tol": ("rel_tol", float),
    "quadrature.min_points_per_oscillation": ("min_points_per_oscillation", int),
    "times.units": ("time_units", str),
    "grid.r_min": ("grid_r_min", float),
    "grid.r_max": ("grid_r_max", float),
    "grid.n_points": ("grid_n_points", int),
    "output.format": ("output_format", str),
    "output.path": ("output_path", str),
    "unitarity.deficit_bound": ("deficit_bound", float),
}


def parse_config_text(text: str, base: RunConfig | None = None) -> RunConfig:
    cfg = base or RunConfig()
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "times":
            literals = [v.strip() for v in value.split(",") if v.strip()]
            try:
                updates["times"] = tuple(float(v) for v in literals)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad times list {value!r}") from exc
            updates["time_labels"] = tuple(literals)
            continue
        if key not in _KEY_PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        attr, parser = _KEY_PARSERS[key]
        try:
            updates[attr] = parser(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    return replace(cfg, **updates).validate()


def load_config(path: str, base: RunConfig | None = None) -> RunConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, base)


def default_config() -> RunConfig:
    return RunConfig().validate()
