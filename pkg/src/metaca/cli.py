"""Batch driver: ``metaca run``, ``metaca sweep`` and ``metaca info``.

Each run writes into its output directory:

* PPM frames named ``<run-id>_<layer>_<generation>.ppm``
* ``metrics.csv`` with one row per generation
* ``history.txt`` (1D only), one line per generation
* ``manifest.txt`` with the software version, seed and config hash

A sweep writes one ``run_NNN`` subdirectory per member plus ``sweep.csv``.
Nothing written depends on timing, scheduling or the output path, so the
same config and seed give byte-identical trees.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path
from typing import Optional

from . import __version__, analysis, render, sim1d, sim2d
from .blend1d import BlendTemplate
from .config import ConfigError, ExperimentConfig, config_hash, parse_config, semantic_items
from .geno2d import BlendKind, BlendStrategy2D, Condition, Genotype2D, Source
from .rng import Xoshiro256StarStar, derive_seed

__all__ = ["parse_config", "execute", "info", "main", "build_history", "build_grid"]

SWEEP_COLUMNS = {
    "run1d": ["run", "seed", "stabilization_generation", "final_density", "final_entropy"],
    "run2d": ["run", "seed", "final_population", "final_mean_weight"],
}


def _meta(cfg: ExperimentConfig) -> sim1d.MetaRule1D:
    kind = sim1d.MetaKind(cfg.meta)
    template = BlendTemplate.from_string(cfg.template) if kind is sim1d.MetaKind.TEMPLATE else None
    return sim1d.MetaRule1D(kind, template)


def build_history(cfg: ExperimentConfig) -> sim1d.History1D:
    mutation = sim1d.MutationSpec(sim1d.MutationMode(cfg.mutation), cfg.rate)
    return sim1d.run(
        cfg.width, cfg.generations, _meta(cfg), mutation, cfg.seed, sim1d.Boundary(cfg.boundary)
    )


def build_grid(cfg: ExperimentConfig) -> sim2d.Grid2D:
    topology = sim2d.Topology(cfg.topology)
    genotype = Genotype2D.parse(cfg.genotype)
    if cfg.pattern:
        grid = sim2d.parse_pattern(
            Path(cfg.pattern).read_text(), genotype, topology, cfg.s_max, cfg.w_max
        )
        return grid
    return sim2d.random_grid(
        cfg.height,
        cfg.width,
        Xoshiro256StarStar(cfg.seed),
        density=cfg.density,
        weight_range=(cfg.weight_min, cfg.weight_max),
        genotype=genotype,
        jitter=cfg.genotype_jitter,
        topology=topology,
        s_max=cfg.s_max,
        w_max=cfg.w_max,
    )


def _strategy(cfg: ExperimentConfig) -> Optional[BlendStrategy2D]:
    if cfg.strategy == "none":
        return None
    return BlendStrategy2D(BlendKind(cfg.strategy), Source(cfg.source), Condition(cfg.condition))


def _write_manifest(out: Path, cfg: ExperimentConfig) -> None:
    lines = [
        f"software = metaca {__version__}",
        f"config_hash = {config_hash(cfg)}",
        f"seed = {cfg.seed}",
        f"mode = {cfg.mode}",
        "# fields that determine the artifacts",
    ]
    lines += [f"{k} = {v}" for k, v in semantic_items(cfg).items()]
    (out / "manifest.txt").write_text("\n".join(lines) + "\n")


def _execute_1d(cfg: ExperimentConfig, out: Path) -> dict:
    history = build_history(cfg)
    palette = render.Palette(render.PaletteKind(cfg.palette))
    for layer in (s.strip() for s in cfg.layers.split(",") if s.strip()):
        image = render.render_1d(history, palette, layer)
        render.write_ppm(out / render.frame_name(cfg.run_id, layer, cfg.generations), image)
    (out / "history.txt").write_text(history.to_text())

    window = cfg.metrics_window if cfg.metrics_window <= cfg.generations else None
    rows = [analysis.metrics(history, g, window) for g in range(cfg.generations + 1)]
    with open(out / "metrics.csv", "w", newline="") as fh:
        analysis.write_csv(rows, fh)
    _write_manifest(out, cfg)
    return {
        "seed": cfg.seed,
        "stabilization_generation": analysis.stabilization_generation(
            history.genotypes, cfg.metrics_threshold, cfg.metrics_window
        ),
        "final_density": rows[-1].phenotype_density,
        "final_entropy": rows[-1].genotype_entropy,
    }


def _execute_2d(cfg: ExperimentConfig, out: Path) -> dict:
    grid = build_grid(cfg)
    mode = sim2d.StimulusMode(cfg.stimulus)
    rows = []
    for g in sim2d.iterate2d(grid, cfg.generations, _strategy(cfg), mode):
        rows.append(analysis.metrics_2d(g))
        if g.generation % cfg.snapshot_every == 0 or g.generation == cfg.generations:
            name = render.frame_name(cfg.run_id, "weight", g.generation)
            render.write_ppm(out / name, render.render_2d(g))
    with open(out / "metrics.csv", "w", newline="") as fh:
        analysis.write_csv(rows, fh, two_d=True)
    _write_manifest(out, cfg)
    return {
        "seed": cfg.seed,
        "final_population": rows[-1].population,
        "final_mean_weight": rows[-1].mean_weight,
    }


def _execute_single(cfg: ExperimentConfig, out: Path) -> dict:
    out.mkdir(parents=True, exist_ok=True)
    if cfg.mode == "run1d":
        return _execute_1d(cfg, out)
    return _execute_2d(cfg, out)


def _sweep_member(args):
    cfg, out = args
    return _execute_single(cfg, Path(out))


def _execute_sweep(cfg: ExperimentConfig, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    jobs = []
    for i in range(cfg.seeds):
        name = f"run_{i:03d}"
        member = cfg.replace(mode=cfg.sweep_mode, seed=derive_seed(cfg.seed, i), run_id=name)
        jobs.append((member, str(out / name)))
    workers = cfg.workers or os.cpu_count() or 1
    if workers == 1 or len(jobs) == 1:
        results = [_sweep_member(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_sweep_member, jobs))

    columns = SWEEP_COLUMNS[cfg.sweep_mode]
    lines = [",".join(columns)]
    for i, res in enumerate(results):
        res = dict(res, run=f"run_{i:03d}")
        lines.append(",".join(res[c] if c == "run" else analysis.format_number(res[c]) for c in columns))
    (out / "sweep.csv").write_text("\n".join(lines) + "\n")
    _write_manifest(out, cfg)


def execute(cfg: ExperimentConfig) -> int:
    """Run ``cfg`` and write its artifacts under ``cfg.out``; returns an exit status."""
    out = Path(cfg.out)
    try:
        if cfg.mode == "sweep":
            _execute_sweep(cfg, out)
        else:
            _execute_single(cfg, out)
    except OSError as exc:
        print(f"metaca: {exc}", file=sys.stderr)
        return 1
    return 0


def info() -> str:
    lines = [
        f"metaca {__version__}",
        "meta-rules (1D): multiply, blend, template",
        "mutation modes (1D): none, uniform, first_bit (presets: high=0.05, low=0.002)",
        "blend strategies (2D): union, intersection, average, none",
        "blend sources (2D): alive, all; blend conditions: alive, always",
        "stimulus modes (2D): count, weight",
        "palettes: hue, grey (1D genotype); weight (2D)",
        "",
        "config keys (key = value, '#' comments):",
    ]
    for f in fields(ExperimentConfig):
        default = "(required)" if f.name == "mode" else repr(f.default)
        lines.append(f"  {f.name:<18} {default:<22} {f.metadata['help']}")
    return "\n".join(lines) + "\n"


def _load(path: str, **overrides) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"), **overrides)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="metaca", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment")
    p_run.add_argument("config")
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--out")

    p_sweep = sub.add_parser("sweep", help="repeat an experiment over derived seeds")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--seeds", type=int, required=True)
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument("--out")
    p_sweep.add_argument("--workers", type=int)

    sub.add_parser("info", help="list capabilities and the config schema")

    args = parser.parse_args(argv)
    if args.command == "info":
        sys.stdout.write(info())
        return 0
    try:
        if args.command == "run":
            cfg = _load(args.config, seed=args.seed, out=args.out)
        else:
            cfg = _load(
                args.config, seed=args.seed, out=args.out, workers=args.workers, seeds=args.seeds
            )
            cfg = cfg.replace(mode="sweep", sweep_mode=cfg.base_mode)
    except ConfigError as exc:
        print(f"metaca: {args.config}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"metaca: {exc}", file=sys.stderr)
        return 1
    return execute(cfg)


if __name__ == "__main__":
    sys.exit(main())
