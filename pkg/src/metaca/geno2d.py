"""Partition genotypes for the 2D automaton and the ways of blending them.

A genotype ``(x, y, z)`` with ``0 <= x <= y <= z <= s_max`` splits the
stimulus line into four zones::

    S < x        dies (underpopulation)
    x <= S <= y  alive (survives or is born)
    y < S < z    keeps its current state
    S >= z       dies (overcrowding)

On the line [0, 8] with neighbour counts as stimulus, ``(3, 3, 5)`` gives a
Life variant: birth and survival on exactly 3, status quo on 4.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "Genotype2D",
    "BlendKind",
    "Source",
    "Condition",
    "BlendStrategy2D",
    "CONWAY",
    "classify",
    "clamp",
    "union_blend",
    "intersection_blend",
    "average_blend",
    "round_half_up_div",
    "classify_array",
]


@dataclass(frozen=True, order=True)
class Genotype2D:
    x: int
    y: int
    z: int

    def __post_init__(self):
        if not 0 <= self.x <= self.y <= self.z:
            raise ValueError(f"genotype must satisfy 0 <= x <= y <= z, got {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def check_range(self, s_max: int) -> None:
        if self.z > s_max:
            raise ValueError(f"genotype {self.as_tuple()} exceeds s_max={s_max}")

    @classmethod
    def parse(cls, text: str) -> Genotype2D:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"genotype literal needs three integers 'x,y,z': {text!r}")
        return cls(*(int(p) for p in parts))

    def __str__(self) -> str:
        return f"{self.x},{self.y},{self.z}"


CONWAY = Genotype2D(3, 3, 5)


class BlendKind(enum.Enum):
    UNION = "union"
    INTERSECTION = "intersection"
    AVERAGE = "average"


class Source(enum.Enum):
    ALIVE = "alive"  # only currently-alive neighbours contribute
    ALL = "all"


class Condition(enum.Enum):
    ALIVE = "alive"  # blend only where the cell is alive after propagation
    ALWAYS = "always"


@dataclass(frozen=True)
class BlendStrategy2D:
    kind: BlendKind = BlendKind.UNION
    source: Source = Source.ALL
    condition: Condition = Condition.ALIVE


def classify(stimulus: int, genotype: Genotype2D, currently_alive: bool, s_max: int = 8) -> bool:
    if not 0 <= stimulus <= s_max:
        raise ValueError(f"stimulus {stimulus} outside [0, {s_max}]")
    if stimulus < genotype.x:
        return False
    if stimulus <= genotype.y:
        return True
    if stimulus < genotype.z:
        return bool(currently_alive)
    return False


def clamp(x: int, y: int, z: int) -> Genotype2D:
    """Raise y to x and z to y where the ordering is violated."""
    y = max(x, y)
    z = max(y, z)
    return Genotype2D(x, y, z)


def union_blend(g1: Genotype2D, g2: Genotype2D) -> Genotype2D:
    return Genotype2D(min(g1.x, g2.x), max(g1.y, g2.y), max(g1.z, g2.z))


def intersection_blend(g1: Genotype2D, g2: Genotype2D) -> Genotype2D:
    return clamp(max(g1.x, g2.x), min(g1.y, g2.y), min(g1.z, g2.z))


def round_half_up_div(total, count):
    """``round(total / count)`` with halves rounded up, for non-negative ints."""
    return (2 * total + count) // (2 * count)


def average_blend(genotypes: Sequence[Genotype2D]) -> Genotype2D:
    if not genotypes:
        raise ValueError("average_blend needs at least one genotype")
    n = len(genotypes)
    sx = sum(g.x for g in genotypes)
    sy = sum(g.y for g in genotypes)
    sz = sum(g.z for g in genotypes)
    return clamp(round_half_up_div(sx, n), round_half_up_div(sy, n), round_half_up_div(sz, n))


def classify_array(stimulus: np.ndarray, genotypes: np.ndarray, alive: np.ndarray) -> np.ndarray:
    """Vectorised :func:`classify`; ``genotypes`` has a trailing axis of 3."""
    x, y, z = genotypes[..., 0], genotypes[..., 1], genotypes[..., 2]
    return np.where(
        stimulus < x, False, np.where(stimulus <= y, True, np.where(stimulus < z, alive, False))
    )
