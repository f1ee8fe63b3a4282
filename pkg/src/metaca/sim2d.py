"""Two-dimensional MetaCA with weighted cells and per-cell partition genotypes.

A synchronous step reads only the pre-step grid and, for every cell:

1. decides life or death from its stimulus and its own genotype;
2. if alive next, takes the rounded mean weight of its currently-alive
   Moore neighbours (own weight when there are none); dead cells keep
   their stored weight;
3. where the blend condition holds, replaces its genotype by the blend of
   its own genotype with the source neighbours' genotypes, folded in the
   order N, NE, E, SE, S, SW, W, NW.

Dead cells keep their weight and genotype so they can still be blended
from.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterator, Optional

import numpy as np

from . import geno2d
from .geno2d import BlendKind, BlendStrategy2D, Condition, Genotype2D, Source, round_half_up_div
from .rng import Xoshiro256StarStar

__all__ = [
    "Topology",
    "StimulusMode",
    "Grid2D",
    "DIRECTIONS",
    "stimulus",
    "stimulus_array",
    "step",
    "update_cell",
    "iterate2d",
    "run2d",
    "random_grid",
    "parse_pattern",
    "format_pattern",
]

# (row offset, column offset) for N, NE, E, SE, S, SW, W, NW
DIRECTIONS = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))


class Topology(enum.Enum):
    TORUS = "torus"
    BOUNDED = "bounded"


class StimulusMode(enum.Enum):
    COUNT = "count"  # alive neighbours * s_max / 8
    WEIGHT = "weight"  # sum of alive neighbours' weights


@dataclass
class Grid2D:
    alive: np.ndarray  # (H, W) bool
    weight: np.ndarray  # (H, W) int64
    genotype: np.ndarray  # (H, W, 3) int64
    topology: Topology = Topology.TORUS
    s_max: int = 1000
    w_max: int = 125
    generation: int = 0

    def __post_init__(self):
        self.alive = np.asarray(self.alive, dtype=bool)
        self.weight = np.asarray(self.weight, dtype=np.int64)
        self.genotype = np.asarray(self.genotype, dtype=np.int64)
        h, w = self.alive.shape
        if h < 3 or w < 3:
            raise ValueError(f"grid must be at least 3x3, got {h}x{w}")
        if self.weight.shape != (h, w) or self.genotype.shape != (h, w, 3):
            raise ValueError("alive, weight and genotype layers disagree in shape")

    @property
    def shape(self) -> tuple[int, int]:
        return self.alive.shape

    @property
    def population(self) -> int:
        return int(self.alive.sum())

    @classmethod
    def uniform(cls, alive, weight=0, genotype: Genotype2D = geno2d.CONWAY, **kw) -> Grid2D:
        alive = np.asarray(alive, dtype=bool)
        weights = np.broadcast_to(np.asarray(weight, dtype=np.int64), alive.shape).copy()
        geno = np.broadcast_to(np.array(genotype.as_tuple()), alive.shape + (3,)).copy()
        return cls(alive, weights, geno, **kw)

    def genotype_at(self, r: int, c: int) -> Genotype2D:
        return Genotype2D(*(int(v) for v in self.genotype[r, c]))

    def copy(self) -> Grid2D:
        return replace(
            self,
            alive=self.alive.copy(),
            weight=self.weight.copy(),
            genotype=self.genotype.copy(),
        )

    def same_state(self, other: Grid2D) -> bool:
        return (
            np.array_equal(self.alive, other.alive)
            and np.array_equal(self.weight, other.weight)
            and np.array_equal(self.genotype, other.genotype)
        )


def _shift(a: np.ndarray, dr: int, dc: int, topology: Topology, fill=0) -> np.ndarray:
    """``out[r, c] = a[r + dr, c + dc]`` with wrap-around or ``fill`` outside."""
    if topology is Topology.TORUS:
        return np.roll(a, (-dr, -dc), axis=(0, 1))
    out = np.full_like(a, fill)
    h, w = a.shape[:2]
    rs = slice(max(0, -dr), min(h, h - dr))
    cs = slice(max(0, -dc), min(w, w - dc))
    rd = slice(max(0, dr), min(h, h + dr))
    cd = slice(max(0, dc), min(w, w + dc))
    out[rs, cs] = a[rd, cd]
    return out


def _neighbour(grid: Grid2D, r: int, c: int, dr: int, dc: int) -> Optional[tuple[int, int]]:
    h, w = grid.shape
    rr, cc = r + dr, c + dc
    if grid.topology is Topology.TORUS:
        return rr % h, cc % w
    if 0 <= rr < h and 0 <= cc < w:
        return rr, cc
    return None


def stimulus(grid: Grid2D, position: tuple[int, int], mode: StimulusMode) -> int:
    r, c = position
    count = total = 0
    for dr, dc in DIRECTIONS:
        nb = _neighbour(grid, r, c, dr, dc)
        if nb is not None and grid.alive[nb]:
            count += 1
            total += int(grid.weight[nb])
    if mode is StimulusMode.COUNT:
        return count * grid.s_max // 8
    return total


def stimulus_array(grid: Grid2D, mode: StimulusMode) -> np.ndarray:
    count = np.zeros(grid.shape, dtype=np.int64)
    total = np.zeros(grid.shape, dtype=np.int64)
    for dr, dc in DIRECTIONS:
        a = _shift(grid.alive, dr, dc, grid.topology, False)
        count += a
        total += np.where(a, _shift(grid.weight, dr, dc, grid.topology, 0), 0)
    if mode is StimulusMode.COUNT:
        return count * grid.s_max // 8
    return total


def step(
    grid: Grid2D,
    strategy: Optional[BlendStrategy2D] = BlendStrategy2D(),
    mode: StimulusMode = StimulusMode.WEIGHT,
) -> Grid2D:
    """One synchronous update; ``strategy=None`` disables genotype blending."""
    topo = grid.topology
    nb_alive = []
    nb_valid = []
    count = np.zeros(grid.shape, dtype=np.int64)
    wsum = np.zeros(grid.shape, dtype=np.int64)
    for dr, dc in DIRECTIONS:
        a = _shift(grid.alive, dr, dc, topo, False)
        w = _shift(grid.weight, dr, dc, topo, 0)
        nb_alive.append(a)
        nb_valid.append(_shift(np.ones(grid.shape, dtype=bool), dr, dc, topo, False))
        count += a
        wsum += np.where(a, w, 0)

    s = count * grid.s_max // 8 if mode is StimulusMode.COUNT else wsum
    next_alive = geno2d.classify_array(s, grid.genotype, grid.alive)

    safe = np.maximum(count, 1)
    propagated = np.where(count > 0, round_half_up_div(wsum, safe), grid.weight)
    next_weight = np.where(next_alive, propagated, grid.weight)

    next_geno = grid.genotype
    if strategy is not None:
        if strategy.condition is Condition.ALIVE:
            mask = next_alive
        else:
            mask = np.ones(grid.shape, dtype=bool)
        include = nb_alive if strategy.source is Source.ALIVE else nb_valid
        blended = _blend_field(grid, strategy.kind, include)
        next_geno = np.where(mask[..., None], blended, grid.genotype)

    return replace(
        grid,
        alive=next_alive,
        weight=next_weight,
        genotype=next_geno,
        generation=grid.generation + 1,
    )


def _blend_field(grid: Grid2D, kind: BlendKind, include: list[np.ndarray]) -> np.ndarray:
    acc = grid.genotype.copy()
    if kind is BlendKind.AVERAGE:
        n = np.ones(grid.shape, dtype=np.int64)
    for (dr, dc), inc in zip(DIRECTIONS, include):
        nb = _shift(grid.genotype, dr, dc, grid.topology, 0)
        inc3 = inc[..., None]
        if kind is BlendKind.UNION:
            cand = np.stack(
                [
                    np.minimum(acc[..., 0], nb[..., 0]),
                    np.maximum(acc[..., 1], nb[..., 1]),
                    np.maximum(acc[..., 2], nb[..., 2]),
                ],
                axis=-1,
            )
            acc = np.where(inc3, cand, acc)
        elif kind is BlendKind.INTERSECTION:
            x = np.maximum(acc[..., 0], nb[..., 0])
            y = np.maximum(x, np.minimum(acc[..., 1], nb[..., 1]))
            z = np.maximum(y, np.minimum(acc[..., 2], nb[..., 2]))
            acc = np.where(inc3, np.stack([x, y, z], axis=-1), acc)
        else:
            acc = acc + np.where(inc3, nb, 0)
            n = n + inc
    if kind is BlendKind.AVERAGE:
        mean = round_half_up_div(acc, n[..., None])
        x = mean[..., 0]
        y = np.maximum(x, mean[..., 1])
        z = np.maximum(y, mean[..., 2])
        acc = np.stack([x, y, z], axis=-1)
    return acc


def update_cell(
    grid: Grid2D,
    r: int,
    c: int,
    strategy: Optional[BlendStrategy2D] = BlendStrategy2D(),
    mode: StimulusMode = StimulusMode.WEIGHT,
) -> tuple[bool, int, Genotype2D]:
    """Per-cell version of :func:`step` built on the scalar genotype operations."""
    own = grid.genotype_at(r, c)
    alive = bool(grid.alive[r, c])
    nbs = [_neighbour(grid, r, c, dr, dc) for dr, dc in DIRECTIONS]
    live = [nb for nb in nbs if nb is not None and grid.alive[nb]]

    nxt = geno2d.classify(stimulus(grid, (r, c), mode), own, alive, s_max=grid.s_max)
    weight = int(grid.weight[r, c])
    if nxt and live:
        weight = round_half_up_div(sum(int(grid.weight[nb]) for nb in live), len(live))

    geno = own
    if strategy is not None and (nxt or strategy.condition is Condition.ALWAYS):
        sources = live if strategy.source is Source.ALIVE else [nb for nb in nbs if nb is not None]
        others = [grid.genotype_at(*nb) for nb in sources]
        if strategy.kind is BlendKind.AVERAGE:
            geno = geno2d.average_blend([own] + others)
        else:
            op = geno2d.union_blend if strategy.kind is BlendKind.UNION else geno2d.intersection_blend
            for g in others:
                geno = op(geno, g)
    return nxt, weight, geno


def iterate2d(
    grid: Grid2D,
    generations: int,
    strategy: Optional[BlendStrategy2D] = BlendStrategy2D(),
    mode: StimulusMode = StimulusMode.WEIGHT,
) -> Iterator[Grid2D]:
    """Yield the seed grid and each of the following ``generations`` grids."""
    yield grid
    for _ in range(generations):
        grid = step(grid, strategy, mode)
        yield grid


def run2d(grid, generations, strategy=BlendStrategy2D(), mode=StimulusMode.WEIGHT, every=1):
    """Snapshots at multiples of ``every`` plus the final grid."""
    if every < 1:
        raise ValueError("snapshot cadence must be at least 1")
    snaps = []
    for g in iterate2d(grid, generations, strategy, mode):
        if g.generation % every == 0 or g.generation == grid.generation + generations:
            snaps.append(g)
    return snaps


def random_grid(
    height: int,
    width: int,
    rng: Xoshiro256StarStar,
    density: float = 0.5,
    weight_range: tuple[int, int] = (0, 125),
    genotype: Genotype2D = Genotype2D(200, 400, 800),
    jitter: int = 0,
    topology: Topology = Topology.TORUS,
    s_max: int = 1000,
    w_max: int = 125,
) -> Grid2D:
    """Random seed grid; cells are drawn in row-major order.

    Each cell takes one draw for life (``random() < density``), one for its
    weight (uniform on ``weight_range``, also for dead cells) and, when
    ``jitter > 0``, three draws offsetting x, y, z by up to ``jitter``
    before clamping into [0, s_max] and sorting.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    lo, hi = weight_range
    if not 0 <= lo <= hi <= w_max:
        raise ValueError(f"weight range {weight_range} not within [0, {w_max}]")
    genotype.check_range(s_max)
    alive = np.zeros((height, width), dtype=bool)
    weight = np.zeros((height, width), dtype=np.int64)
    geno = np.zeros((height, width, 3), dtype=np.int64)
    base = genotype.as_tuple()
    for r in range(height):
        for c in range(width):
            alive[r, c] = rng.random() < density
            weight[r, c] = lo + rng.below(hi - lo + 1)
            if jitter > 0:
                vals = [min(s_max, max(0, v + rng.below(2 * jitter + 1) - jitter)) for v in base]
                geno[r, c] = sorted(vals)
            else:
                geno[r, c] = base
    return Grid2D(alive, weight, geno, topology=topology, s_max=s_max, w_max=w_max)


_HEX = "0123456789abcdef"


def parse_pattern(
    text: str,
    genotype: Genotype2D = geno2d.CONWAY,
    topology: Topology = Topology.TORUS,
    s_max: int = 8,
    w_max: int = 1,
) -> Grid2D:
    """Read a seed pattern: one row per line, ``.`` dead, hex digit = alive.

    The digit is a weight bucket: weight = round(digit * w_max / 15).
    Lines starting with ``#`` are ignored.
    """
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty pattern")
    width = len(rows[0])
    alive = np.zeros((len(rows), width), dtype=bool)
    weight = np.zeros((len(rows), width), dtype=np.int64)
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"pattern row {r + 1} has length {len(row)}, expected {width}")
        for c, ch in enumerate(row.lower()):
            if ch == ".":
                continue
            if ch not in _HEX:
                raise ValueError(f"pattern row {r + 1}: unexpected character {ch!r}")
            alive[r, c] = True
            weight[r, c] = round_half_up_div(_HEX.index(ch) * w_max, 15)
    return Grid2D.uniform(alive, weight, genotype, topology=topology, s_max=s_max, w_max=w_max)


def format_pattern(grid: Grid2D) -> str:
    lines = []
    for r in range(grid.shape[0]):
        chars = []
        for c in range(grid.shape[1]):
            if grid.alive[r, c]:
                chars.append(_HEX[round_half_up_div(int(grid.weight[r, c]) * 15, grid.w_max)])
            else:
                chars.append(".")
        lines.append("".join(chars))
    return "\n".join(lines) + "\n"
