"""Experiment configuration: a line-oriented ``key = value`` format.

Blank lines and ``#`` comments are ignored.  Every key has a default except
``mode``.  Unknown or repeated keys, malformed values and violated
constraints are reported with their line number.
"""
from __future__ import annotations

import dataclasses
import hashlib
from dataclasses import dataclass, field, fields
from typing import Optional

from .blend1d import BlendTemplate
from .geno2d import Genotype2D
from .sim1d import MUTATION_PRESETS

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "parse_config",
    "serialize",
    "config_hash",
    "semantic_items",
    "SCHEMA",
]

MODES = ("run1d", "run2d", "sweep")


class ConfigError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _opt(default, help, choices=None):
    return field(default=default, metadata={"help": help, "choices": choices})


@dataclass(frozen=True)
class ExperimentConfig:
    mode: str = _opt("", "run1d, run2d or sweep (required)", MODES)
    sweep_mode: str = _opt("run1d", "what a sweep repeats", ("run1d", "run2d"))
    seeds: int = _opt(10, "number of sweep members")
    workers: int = _opt(0, "parallel sweep workers; 0 = all cores")
    seed: int = _opt(0, "64-bit master seed")
    width: int = _opt(256, "cells per row (1D) or columns (2D)")
    height: int = _opt(128, "rows (2D)")
    generations: int = _opt(500, "number of update steps")
    # 1D
    meta: str = _opt("blend", "1D meta-rule", ("multiply", "blend", "template"))
    template: str = _opt("0*0**1*1", "template for meta=template; '*' = local logic")
    boundary: str = _opt("ring", "1D boundary", ("ring", "dead"))
    mutation: str = _opt("none", "mutation mode", ("none", "uniform", "first_bit"))
    mutation_rate: str = _opt("low", "flip probability in [0,1] or a preset: high, low")
    palette: str = _opt("grey", "1D genotype palette", ("hue", "grey"))
    layers: str = _opt("genotype,phenotype", "1D images to write: genotype, phenotype, stacked")
    # 2D
    strategy: str = _opt("union", "2D blend", ("union", "intersection", "average", "none"))
    source: str = _opt("all", "neighbours that feed the blend", ("alive", "all"))
    condition: str = _opt("alive", "when a cell blends", ("alive", "always"))
    stimulus: str = _opt("weight", "2D stimulus", ("count", "weight"))
    topology: str = _opt("torus", "2D edges", ("torus", "bounded"))
    s_max: int = _opt(1000, "length of the stimulus line")
    w_max: int = _opt(125, "largest cell weight")
    density: float = _opt(0.5, "initial alive fraction")
    weight_min: int = _opt(0, "smallest initial weight")
    weight_max: int = _opt(125, "largest initial weight")
    genotype: str = _opt("200,400,800", "initial genotype x,y,z")
    genotype_jitter: int = _opt(50, "uniform per-component offset bound for initial genotypes")
    pattern: str = _opt("", "seed pattern file (replaces the random grid)")
    snapshot_every: int = _opt(50, "2D frame cadence in generations")
    # output and analysis
    out: str = _opt("out", "output directory")
    run_id: str = _opt("metaca", "prefix of frame files")
    metrics_window: int = _opt(10, "stability look-back in generations")
    metrics_threshold: float = _opt(0.95, "stability threshold for stabilization")

    @property
    def rate(self) -> float:
        if self.mutation_rate in MUTATION_PRESETS:
            return MUTATION_PRESETS[self.mutation_rate]
        return float(self.mutation_rate)

    @property
    def base_mode(self) -> str:
        return self.sweep_mode if self.mode == "sweep" else self.mode

    def replace(self, **changes) -> ExperimentConfig:
        return dataclasses.replace(self, **changes)


SCHEMA = {f.name: f for f in fields(ExperimentConfig)}


def _convert(f: dataclasses.Field, raw: str):
    if f.type in ("int", int):
        return int(raw, 0) if raw.lower().startswith(("0x", "0o", "0b")) else int(raw)
    if f.type in ("float", float):
        return float(raw)
    return raw


def _validate(cfg: ExperimentConfig, where: dict) -> None:
    def fail(key, msg):
        raise ConfigError(f"{key}: {msg}", where.get(key))

    for f in fields(cfg):
        choices = f.metadata.get("choices")
        value = getattr(cfg, f.name)
        if choices and value not in choices:
            if f.name == "mode" and value == "":
                fail("mode", "is required")
            fail(f.name, f"must be one of {', '.join(choices)}, got {value!r}")
    if cfg.width < 3:
        fail("width", "must be at least 3")
    if cfg.height < 3:
        fail("height", "must be at least 3")
    if cfg.generations < 0:
        fail("generations", "must be non-negative")
    if cfg.seeds < 1:
        fail("seeds", "must be at least 1")
    if cfg.workers < 0:
        fail("workers", "must be non-negative")
    if not 0 <= cfg.seed < 2**64:
        fail("seed", "must fit in 64 unsigned bits")
    try:
        rate = cfg.rate
    except ValueError:
        fail("mutation_rate", f"not a number or preset: {cfg.mutation_rate!r}")
    if not 0.0 <= rate <= 1.0:
        fail("mutation_rate", f"must lie in [0, 1], got {rate}")
    try:
        BlendTemplate.from_string(cfg.template)
    except ValueError as exc:
        fail("template", str(exc))
    layers = [s.strip() for s in cfg.layers.split(",") if s.strip()]
    if not layers or set(layers) - {"genotype", "phenotype", "stacked"}:
        fail("layers", f"expected a list of genotype/phenotype/stacked, got {cfg.layers!r}")
    if cfg.s_max < 8 or cfg.s_max % 8:
        fail("s_max", "must be a positive multiple of 8")
    if not 1 <= cfg.w_max <= cfg.s_max // 8:
        fail("w_max", f"must lie in [1, s_max/8 = {cfg.s_max // 8}]")
    if not 0.0 <= cfg.density <= 1.0:
        fail("density", "must lie in [0, 1]")
    if not 0 <= cfg.weight_min <= cfg.weight_max:
        fail("weight_min", "must satisfy 0 <= weight_min <= weight_max")
    if cfg.weight_max > cfg.w_max:
        fail("weight_max", "must not exceed w_max")
    try:
        g = Genotype2D.parse(cfg.genotype)
        g.check_range(cfg.s_max)
    except ValueError as exc:
        fail("genotype", str(exc))
    if cfg.genotype_jitter < 0:
        fail("genotype_jitter", "must be non-negative")
    if cfg.snapshot_every < 1:
        fail("snapshot_every", "must be at least 1")
    if cfg.metrics_window < 1:
        fail("metrics_window", "must be at least 1")
    if not 0.0 < cfg.metrics_threshold <= 1.0:
        fail("metrics_threshold", "must lie in (0, 1]")
    if not cfg.run_id or "/" in cfg.run_id:
        fail("run_id", "must be a non-empty name without '/'")


def parse_config(text: str, **overrides) -> ExperimentConfig:
    values, where = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in SCHEMA:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        try:
            values[key] = _convert(SCHEMA[key], value)
        except ValueError:
            raise ConfigError(f"{key}: malformed value {value!r}", lineno) from None
        where[key] = lineno
    values.update({k: v for k, v in overrides.items() if v is not None})
    cfg = ExperimentConfig(**values)
    _validate(cfg, where)
    return cfg


def serialize(cfg: ExperimentConfig) -> str:
    return "".join(f"{f.name} = {getattr(cfg, f.name)}\n" for f in fields(cfg))


_COMMON = ("mode", "seed", "width", "generations", "run_id", "metrics_window", "metrics_threshold")
_KEYS_1D = ("meta", "boundary", "mutation", "palette", "layers")
_KEYS_2D = (
    "height", "strategy", "stimulus", "topology", "s_max", "w_max", "density", "weight_min",
    "weight_max", "genotype", "genotype_jitter", "pattern", "snapshot_every",
)


def semantic_items(cfg: ExperimentConfig) -> dict:
    """The fields that influence a run's artifacts, in normalised form."""
    items = {k: getattr(cfg, k) for k in _COMMON}
    if cfg.mode == "sweep":
        items.update(sweep_mode=cfg.sweep_mode, seeds=cfg.seeds)
    if cfg.base_mode == "run1d":
        items.update({k: getattr(cfg, k) for k in _KEYS_1D})
        items["layers"] = ",".join(s.strip() for s in cfg.layers.split(",") if s.strip())
        if cfg.meta == "template":
            items["template"] = cfg.template
        if cfg.mutation != "none":
            items["mutation_rate"] = repr(cfg.rate)
    else:
        items.update({k: getattr(cfg, k) for k in _KEYS_2D})
        items["genotype"] = str(Genotype2D.parse(cfg.genotype))
        if cfg.strategy != "none":
            items.update(source=cfg.source, condition=cfg.condition)
    return items


def config_hash(cfg: ExperimentConfig) -> str:
    """SHA-256 over the fields that can change the artifacts' content."""
    text = "\n".join(f"{k} = {v}" for k, v in semantic_items(cfg).items())
    return hashlib.sha256(text.encode()).hexdigest()
