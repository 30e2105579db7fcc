"""JSON run configuration: schema, validation, and grid materialisation.

A configuration file drives the CLI.  Top-level keys:

    instance     required; economics of the approval problem
    prior        truncated normal belief distribution (sweeps only)
    weights      loss weights, default both 1
    quadrature   Simpson panels per segment, default 2000
    grids        alpha / R / c0 grids, either explicit values or
                 {start, stop, points, spacing} with linear or log spacing
    output       default CSV destination
    description  free-form note, ignored by the solvers

Unknown keys anywhere are rejected.  Validation is collected, not
short-circuited: one failed load reports every offending field by path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .agent import EconomicInstance
from .errors import ConfigError
from .loss import LossWeights, QuadratureSpec
from .stats import TruncatedNormalPrior

_TOP_KEYS = {"instance", "prior", "weights", "quadrature", "grids", "output", "description"}
_INSTANCE_KEYS = {"R", "c0", "c", "mu_b", "n_min", "n_max"}
_PRIOR_KEYS = {"mean", "sd", "lo", "hi"}
_WEIGHT_KEYS = {"lambda_fp", "lambda_fn"}
_QUAD_KEYS = {"panels", "scheme"}
_GRID_KEYS = {"alpha", "R", "c0"}
_GRID_SPEC_KEYS = {"values", "start", "stop", "points", "spacing"}


@dataclass(frozen=True)
class RunConfig:
    """Validated, materialised contents of one configuration file."""

    instance: EconomicInstance
    prior: TruncatedNormalPrior | None
    weights: LossWeights
    quadrature: QuadratureSpec
    alpha_grid: list[float] | None
    r_grid: list[float] | None
    c0_grid: list[float] | None
    output: str | None
    description: str = ""


def default_alpha_grid(points: int = 400, start: float = 1e-4, stop: float = 0.9) -> list[float]:
    """Log-spaced sweep grid used when a configuration names none."""
    return _log_spaced(start, stop, points)


def _log_spaced(start: float, stop: float, points: int) -> list[float]:
    a, b = math.log10(start), math.log10(stop)
    if points == 1:
        return [start]
    return [10.0 ** (a + i * (b - a) / (points - 1)) for i in range(points)]


def _lin_spaced(start: float, stop: float, points: int) -> list[float]:
    if points == 1:
        return [start]
    return [start + i * (stop - start) / (points - 1) for i in range(points)]


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_unknown(obj: dict, allowed: set[str], path: str, problems: list[str]) -> None:
    for key in sorted(set(obj) - allowed):
        problems.append(f"{path}{key}: unknown key")


def _parse_instance(obj, problems: list[str]) -> EconomicInstance | None:
    if not isinstance(obj, dict):
        problems.append("instance: expected an object")
        return None
    seen = len(problems)
    _check_unknown(obj, _INSTANCE_KEYS, "instance.", problems)
    ok = True
    for key in ("R", "c0", "c", "mu_b"):
        if key not in obj:
            problems.append(f"instance.{key}: required")
            ok = False
        elif not _is_number(obj[key]):
            problems.append(f"instance.{key}: expected a finite number, got {obj[key]!r}")
            ok = False
    for key in ("n_min", "n_max"):
        if key in obj and not _is_int(obj[key]):
            problems.append(f"instance.{key}: expected an integer, got {obj[key]!r}")
            ok = False
    if not ok:
        return None
    kwargs = {k: obj[k] for k in ("n_min", "n_max") if k in obj}
    if not obj["R"] > 0.0:
        problems.append(f"instance.R: must be positive, got {obj['R']!r}")
    if not obj["c0"] >= 0.0:
        problems.append(f"instance.c0: must be nonnegative, got {obj['c0']!r}")
    if not obj["c"] >= 0.0:
        problems.append(f"instance.c: must be nonnegative, got {obj['c']!r}")
    if not 0.0 < obj["mu_b"] < 1.0:
        problems.append(f"instance.mu_b: must lie strictly between 0 and 1, got {obj['mu_b']!r}")
    if kwargs.get("n_min", 1) < 1:
        problems.append(f"instance.n_min: must be at least 1, got {kwargs['n_min']!r}")
    elif kwargs.get("n_max", 100_000) < kwargs.get("n_min", 1):
        problems.append(f"instance.n_max: must be >= n_min, got {kwargs['n_max']!r}")
    if len(problems) > seen:
        return None
    return EconomicInstance(
        R=float(obj["R"]), c0=float(obj["c0"]), c=float(obj["c"]), mu_b=float(obj["mu_b"]), **kwargs
    )


def _parse_prior(obj, problems: list[str]) -> TruncatedNormalPrior | None:
    if not isinstance(obj, dict):
        problems.append("prior: expected an object")
        return None
    _check_unknown(obj, _PRIOR_KEYS, "prior.", problems)
    ok = True
    for key in _PRIOR_KEYS:
        if key not in obj:
            problems.append(f"prior.{key}: required")
            ok = False
        elif not _is_number(obj[key]):
            problems.append(f"prior.{key}: expected a finite number, got {obj[key]!r}")
            ok = False
    if not ok:
        return None
    if not obj["sd"] > 0.0:
        problems.append(f"prior.sd: must be positive, got {obj['sd']!r}")
        return None
    if not 0.0 < obj["lo"] < obj["hi"] < 1.0:
        problems.append(
            f"prior.lo/prior.hi: need 0 < lo < hi < 1, got lo={obj['lo']!r} hi={obj['hi']!r}"
        )
        return None
    return TruncatedNormalPrior(
        mean=float(obj["mean"]), sd=float(obj["sd"]), lo=float(obj["lo"]), hi=float(obj["hi"])
    )


def _parse_weights(obj, problems: list[str]) -> LossWeights | None:
    if not isinstance(obj, dict):
        problems.append("weights: expected an object")
        return None
    _check_unknown(obj, _WEIGHT_KEYS, "weights.", problems)
    vals = {}
    for key in _WEIGHT_KEYS:
        if key not in obj:
            problems.append(f"weights.{key}: required")
        elif not _is_number(obj[key]) or obj[key] < 0.0:
            problems.append(f"weights.{key}: expected a nonnegative number, got {obj[key]!r}")
        else:
            vals[key] = float(obj[key])
    if len(vals) < 2:
        return None
    if vals["lambda_fp"] == 0.0 and vals["lambda_fn"] == 0.0:
        problems.append("weights: at least one of lambda_fp, lambda_fn must be positive")
        return None
    return LossWeights(**vals)


def _parse_quadrature(obj, problems: list[str]) -> QuadratureSpec | None:
    if not isinstance(obj, dict):
        problems.append("quadrature: expected an object")
        return None
    _check_unknown(obj, _QUAD_KEYS, "quadrature.", problems)
    panels = obj.get("panels", 2000)
    scheme = obj.get("scheme", "simpson")
    ok = True
    if not _is_int(panels) or panels < 10 or panels % 2:
        problems.append(f"quadrature.panels: expected an even integer >= 10, got {panels!r}")
        ok = False
    if scheme != "simpson":
        problems.append(f"quadrature.scheme: only 'simpson' is supported, got {scheme!r}")
        ok = False
    return QuadratureSpec(panels=panels) if ok else None


def _parse_grid(obj, path: str, problems: list[str], *, positive: bool, unit: bool) -> list[float] | None:
    if not isinstance(obj, dict):
        problems.append(f"{path}: expected an object")
        return None
    _check_unknown(obj, _GRID_SPEC_KEYS, f"{path}.", problems)
    if "values" in obj:
        for key in ("start", "stop", "points", "spacing"):
            if key in obj:
                problems.append(f"{path}.{key}: cannot be combined with explicit values")
        values = obj["values"]
        if not isinstance(values, list) or not values or not all(_is_number(v) for v in values):
            problems.append(f"{path}.values: expected a nonempty list of finite numbers")
            return None
        grid = [float(v) for v in values]
    else:
        for key in ("start", "stop", "points"):
            if key not in obj:
                problems.append(f"{path}.{key}: required (or give explicit values)")
                return None
        start, stop, points = obj["start"], obj["stop"], obj["points"]
        spacing = obj.get("spacing", "linear")
        if not (_is_number(start) and _is_number(stop) and start < stop):
            problems.append(f"{path}: need numeric start < stop, got {start!r} and {stop!r}")
            return None
        if not _is_int(points) or points < 2:
            problems.append(f"{path}.points: expected an integer >= 2, got {points!r}")
            return None
        if spacing not in ("linear", "log"):
            problems.append(f"{path}.spacing: expected 'linear' or 'log', got {spacing!r}")
            return None
        if spacing == "log" and not start > 0.0:
            problems.append(f"{path}.start: log spacing requires a positive start, got {start!r}")
            return None
        grid = (
            _log_spaced(float(start), float(stop), points)
            if spacing == "log"
            else _lin_spaced(float(start), float(stop), points)
        )
    for a, b in zip(grid, grid[1:]):
        if not b > a:
            problems.append(f"{path}: grid values must be strictly increasing")
            return None
    if positive and grid[0] <= 0.0:
        problems.append(f"{path}: grid values must be positive")
        return None
    if unit and not (grid[0] > 0.0 and grid[-1] < 1.0):
        problems.append(f"{path}: grid values must lie strictly within (0, 1)")
        return None
    return grid


def load_config(path: str | Path) -> RunConfig:
    """Parse and validate a configuration file, reporting all problems."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"not valid JSON: {exc}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError(["top level: expected a JSON object"])

    problems: list[str] = []
    _check_unknown(raw, _TOP_KEYS, "", problems)

    instance = None
    if "instance" not in raw:
        problems.append("instance: required")
    else:
        instance = _parse_instance(raw["instance"], problems)

    prior = _parse_prior(raw["prior"], problems) if "prior" in raw else None
    weights = _parse_weights(raw["weights"], problems) if "weights" in raw else LossWeights()
    quadrature = (
        _parse_quadrature(raw["quadrature"], problems) if "quadrature" in raw else QuadratureSpec()
    )

    alpha_grid = r_grid = c0_grid = None
    if "grids" in raw:
        grids = raw["grids"]
        if not isinstance(grids, dict):
            problems.append("grids: expected an object")
        else:
            _check_unknown(grids, _GRID_KEYS, "grids.", problems)
            if "alpha" in grids:
                alpha_grid = _parse_grid(
                    grids["alpha"], "grids.alpha", problems, positive=True, unit=True
                )
            if "R" in grids:
                r_grid = _parse_grid(grids["R"], "grids.R", problems, positive=True, unit=False)
            if "c0" in grids:
                c0_grid = _parse_grid(grids["c0"], "grids.c0", problems, positive=True, unit=False)

    output = raw.get("output")
    if output is not None and not isinstance(output, str):
        problems.append(f"output: expected a string path, got {output!r}")
    description = raw.get("description", "")
    if not isinstance(description, str):
        problems.append(f"description: expected a string, got {description!r}")

    if problems:
        raise ConfigError(problems)
    assert instance is not None
    return RunConfig(
        instance=instance,
        prior=prior,
        weights=weights if weights is not None else LossWeights(),
        quadrature=quadrature if quadrature is not None else QuadratureSpec(),
        alpha_grid=alpha_grid,
        r_grid=r_grid,
        c0_grid=c0_grid,
        output=output,
        description=description,
    )


def available_presets() -> list[str]:
    """Names of the configuration presets bundled with the package."""
    root = resources.files("trialgame") / "presets"
    return sorted(p.name.removesuffix(".json") for p in root.iterdir() if p.name.endswith(".json"))


def preset_path(name: str) -> Path:
    """Filesystem path of a bundled preset, by bare name or file name."""
    base = name.removesuffix(".json")
    candidate = resources.files("trialgame") / "presets" / f"{base}.json"
    with resources.as_file(candidate) as p:
        if not p.exists():
            raise FileNotFoundError(f"no bundled preset named {name!r}")
        return Path(p)
