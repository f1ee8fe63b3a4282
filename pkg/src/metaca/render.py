"""Render histories and grids to RGB arrays and binary PPM (P6) files.

Palettes
--------
``HUE256``
    rule number n (ascending) -> HSV(n/256, 1.0, 0.9) -> RGB.
``GREYSCALE``
    grey level round(255 * popcount / 8); the highlighted families get
    fixed colours instead (rule-110 family red).
``WEIGHT``
    2D weights: dead white, alive on a black-to-red ramp by weight / w_max.

Phenotype bits are drawn 1 -> black, 0 -> white.
"""
from __future__ import annotations

import colorsys
import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .rules import FAMILY_BASES, Family, family_lookup

__all__ = [
    "PaletteKind",
    "Palette",
    "DEFAULT_HIGHLIGHTS",
    "rule_colours",
    "render_genotypes",
    "render_phenotypes",
    "render_1d",
    "render_2d",
    "encode_ppm",
    "write_ppm",
    "read_ppm",
    "frame_name",
]

WHITE = (255, 255, 255)
BLACK = (0, 0, 0)

DEFAULT_HIGHLIGHTS = {
    Family.RULE_110: (255, 0, 0),
    Family.RULE_30: (0, 0, 255),
    Family.RULE_90: (0, 255, 0),
    Family.RULE_184: (255, 165, 0),
}


class PaletteKind(enum.Enum):
    HUE256 = "hue"
    GREYSCALE = "grey"
    WEIGHT = "weight"


@dataclass(frozen=True)
class Palette:
    kind: PaletteKind = PaletteKind.GREYSCALE
    highlights: dict = field(default_factory=lambda: dict(DEFAULT_HIGHLIGHTS))

    def __hash__(self):
        return hash((self.kind, tuple(sorted((f.value, c) for f, c in self.highlights.items()))))


def _to_byte(v: float) -> int:
    return int(np.floor(255.0 * v + 0.5))


@lru_cache(maxsize=None)
def _hue_table() -> np.ndarray:
    table = np.zeros((256, 3), dtype=np.uint8)
    for n in range(256):
        table[n] = [_to_byte(c) for c in colorsys.hsv_to_rgb(n / 256, 1.0, 0.9)]
    return table


def rule_colours(palette: Palette) -> np.ndarray:
    """(256, 3) uint8 lookup from ascending rule number to colour."""
    if palette.kind is PaletteKind.HUE256:
        return _hue_table().copy()
    if palette.kind is not PaletteKind.GREYSCALE:
        raise ValueError(f"palette {palette.kind.value!r} has no rule colours")
    pop = np.array([bin(n).count("1") for n in range(256)])
    grey = (2 * 255 * pop + 8) // 16
    table = np.repeat(grey[:, None], 3, axis=1).astype(np.uint8)
    fams = family_lookup()
    for i, fam in enumerate(FAMILY_BASES):
        if fam in palette.highlights:
            table[fams == i] = palette.highlights[fam]
    return table


def render_genotypes(numbers: np.ndarray, palette: Palette) -> np.ndarray:
    return rule_colours(palette)[np.asarray(numbers, dtype=np.uint8)]


def render_phenotypes(bits: np.ndarray) -> np.ndarray:
    bits = np.asarray(bits, dtype=bool)
    img = np.full(bits.shape + (3,), 255, dtype=np.uint8)
    img[bits] = BLACK
    return img


def render_1d(history, palette: Palette = Palette(), layer: str = "stacked") -> np.ndarray:
    """One pixel row per generation; ``stacked`` puts genotype above phenotype."""
    if history.genotypes.shape[0] == 0:
        raise ValueError("empty history")
    if layer == "genotype":
        return render_genotypes(history.genotypes, palette)
    if layer == "phenotype":
        return render_phenotypes(history.phenotypes)
    if layer == "stacked":
        return np.concatenate(
            [render_genotypes(history.genotypes, palette), render_phenotypes(history.phenotypes)]
        )
    raise ValueError(f"unknown layer {layer!r}")


def render_2d(grid) -> np.ndarray:
    red = (2 * 255 * np.clip(grid.weight, 0, grid.w_max) + grid.w_max) // (2 * grid.w_max)
    img = np.full(grid.shape + (3,), 255, dtype=np.uint8)
    img[grid.alive, 0] = red[grid.alive]
    img[grid.alive, 1] = 0
    img[grid.alive, 2] = 0
    return img


def encode_ppm(image: np.ndarray) -> bytes:
    image = np.ascontiguousarray(image, dtype=np.uint8)
    if image.ndim != 3 or image.shape[2] != 3:
        raise ValueError("expected an (H, W, 3) image")
    h, w, _ = image.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + image.tobytes()


def write_ppm(path, image: np.ndarray) -> Path:
    path = Path(path)
    path.write_bytes(encode_ppm(image))
    return path


def read_ppm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    m = re.match(rb"P6\s+(\d+)\s+(\d+)\s+(\d+)\s", data)
    if m is None or int(m.group(3)) != 255:
        raise ValueError("only 8-bit binary PPM is supported")
    w, h = int(m.group(1)), int(m.group(2))
    return np.frombuffer(data[m.end() : m.end() + w * h * 3], dtype=np.uint8).reshape(h, w, 3)


def frame_name(run_id: str, layer: str, generation: int) -> str:
    return f"{run_id}_{layer}_{generation}.ppm"
