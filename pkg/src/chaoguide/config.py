"""JSON run configuration: schema, parsing into library types, and defaults."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .ballistics import RetargetConstraints, Vec3
from .chaos_core import DEFAULT_SEED, DEFAULT_TRANSIENT, ROBUST_WINDOW, MapKind, Vec2
from .errors import ChaoguideError, ConfigError
from .guidance import Scenario, SensorSpec
from .targeting import TargetSpec

EMIT_KINDS = ("csv", "json", "svg")

_num = {"type": "number"}
_count = {"type": "integer", "minimum": 0}
_pair = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_triple = {"type": "array", "items": _num, "minItems": 3, "maxItems": 3}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "scenario": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "launch": _triple,
                "target": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["center", "radius"],
                    "properties": {"center": _pair, "radius": _num},
                },
                "nominal_tof": _num,
                "n": _count,
                "rho": _num,
                "constraints": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"dv_max": _num, "theta_max": _num, "t_min": _num},
                },
                "sensor": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "reading": _num, "s_min": _num, "s_max": _num,
                        "a_min": _num, "a_max": _num,
                    },
                },
                "b_fixed": _num,
                "seed": _pair,
                "transient": _count,
                "stride": {"type": "integer", "minimum": 1},
                "fill_frac": _num,
                "sample_dt": _num,
            },
        },
        "outputs": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "dir": {"type": "string", "minLength": 1},
                "emit": {
                    "type": "array",
                    "items": {"enum": list(EMIT_KINDS)},
                    "minItems": 1,
                    "uniqueItems": True,
                },
            },
        },
        "study": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "scan": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"enum": [k.value for k in MapKind]},
                        "a_range": _pair,
                        "b_range": _pair,
                        "grid": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 1},
                            "minItems": 2,
                            "maxItems": 2,
                        },
                        "iters": {"type": "integer", "minimum": 1000},
                        "seed": _pair,
                        "transient": _count,
                    },
                },
                "epsilons": {"type": "array", "items": _num, "minItems": 1},
                "observe_times": {"type": "array", "items": _num, "minItems": 1},
            },
        },
    },
}


@dataclass(frozen=True)
class ScanStudy:
    kind: MapKind = MapKind.LOZI
    a_range: tuple[float, float] = ROBUST_WINDOW[0]
    b_range: tuple[float, float] = ROBUST_WINDOW[1]
    grid: tuple[int, int] = (20, 20)
    iters: int = 100_000
    seed: tuple[float, float] = DEFAULT_SEED
    transient: int = DEFAULT_TRANSIENT


@dataclass(frozen=True)
class RunConfig:
    scenario: Scenario
    output_dir: Path
    emit: frozenset[str] = frozenset(EMIT_KINDS)
    scan: ScanStudy = field(default_factory=ScanStudy)
    epsilons: tuple[float, ...] = (0.0,)
    observe_times: tuple[float, ...] | None = None


def _scenario(d: dict) -> Scenario:
    base = Scenario()
    kw = {}
    if "launch" in d:
        kw["launch"] = Vec3(*d["launch"])
    if "target" in d:
        kw["target"] = TargetSpec(Vec2(*d["target"]["center"]), d["target"]["radius"])
    if "constraints" in d:
        c = base.constraints
        kw["constraints"] = RetargetConstraints(
            d["constraints"].get("dv_max", c.dv_max),
            d["constraints"].get("theta_max", c.theta_max),
            d["constraints"].get("t_min", c.t_min),
        )
    if "sensor" in d:
        s = base.sensor
        kw["sensor"] = SensorSpec(**{
            k: d["sensor"].get(k, getattr(s, k))
            for k in ("reading", "s_min", "s_max", "a_min", "a_max")
        })
    if "seed" in d:
        kw["seed"] = Vec2(*d["seed"])
    for k in ("nominal_tof", "n", "rho", "b_fixed", "transient", "stride", "fill_frac", "sample_dt"):
        if k in d:
            kw[k] = d[k]
    return Scenario(**kw)


def parse_config(doc: dict, base_dir: Path) -> RunConfig:
    """Validate a decoded config document and build a :class:`RunConfig`."""
    errors = sorted(jsonschema.Draft7Validator(SCHEMA).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ConfigError(f"field {where}: {e.message}")
    try:
        scenario = _scenario(doc.get("scenario", {}))
    except ChaoguideError as exc:
        raise ConfigError(f"field scenario: {exc}") from exc
    outputs = doc.get("outputs", {})
    out_dir = Path(outputs.get("dir", "out"))
    if not out_dir.is_absolute():
        out_dir = base_dir / out_dir
    study = doc.get("study", {})
    sd = study.get("scan", {})
    scan = ScanStudy(
        kind=MapKind(sd.get("kind", "lozi")),
        a_range=tuple(sd.get("a_range", ROBUST_WINDOW[0])),
        b_range=tuple(sd.get("b_range", ROBUST_WINDOW[1])),
        grid=tuple(sd.get("grid", (20, 20))),
        iters=sd.get("iters", 100_000),
        seed=tuple(sd.get("seed", DEFAULT_SEED)),
        transient=sd.get("transient", DEFAULT_TRANSIENT),
    )
    for name in ("epsilons", "observe_times"):
        if not all(math.isfinite(v) for v in study.get(name, [])):
            raise ConfigError(f"field study/{name}: values must be finite")
    obs = study.get("observe_times")
    return RunConfig(
        scenario=scenario,
        output_dir=out_dir,
        emit=frozenset(outputs.get("emit", EMIT_KINDS)),
        scan=scan,
        epsilons=tuple(float(e) for e in study.get("epsilons", (0.0,))),
        observe_times=None if obs is None else tuple(float(t) for t in obs),
    )


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return parse_config(doc, path.parent)
