"""Per-generation metrics for 1D histories and 2D grids, and CSV export."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .rules import FAMILY_BASES, family_lookup

__all__ = [
    "MetricsRow",
    "rule_histogram",
    "genotype_entropy",
    "family_occupancy",
    "stability",
    "metrics",
    "metrics_2d",
    "stabilization_generation",
    "CSV_COLUMNS_1D",
    "CSV_COLUMNS_2D",
    "write_csv",
    "format_number",
]


@dataclass
class MetricsRow:
    generation: int
    phenotype_density: Optional[float] = None
    genotype_entropy: Optional[float] = None
    stability: Optional[float] = None
    interesting_occupancy: dict = field(default_factory=dict)  # Family -> fraction
    rule_histogram: Optional[np.ndarray] = None  # 256 counts, ascending numbering
    population: Optional[int] = None
    mean_weight: Optional[float] = None


def rule_histogram(numbers: np.ndarray) -> np.ndarray:
    return np.bincount(np.asarray(numbers, dtype=np.uint8).ravel(), minlength=256)


def genotype_entropy(numbers: np.ndarray) -> float:
    """Shannon entropy (bits) of the rule distribution; 0..8."""
    counts = rule_histogram(numbers)
    p = counts[counts > 0] / counts.sum()
    return float(max(0.0, -(p * np.log2(p)).sum()))


def family_occupancy(numbers: np.ndarray) -> dict:
    fam = family_lookup()[np.asarray(numbers, dtype=np.uint8).ravel()]
    n = fam.size
    return {f: float((fam == i).sum()) / n for i, f in enumerate(FAMILY_BASES)}


def stability(rows: np.ndarray, generation: int, window: int) -> float:
    """Fraction of cells whose genotype equals the one ``window`` generations back."""
    if window < 1:
        raise ValueError("stability window must be at least 1")
    if generation - window < 0:
        raise ValueError(f"generation {generation} has no predecessor {window} back")
    return float(np.mean(rows[generation] == rows[generation - window]))


def metrics(history, generation: int, window: Optional[int] = 10) -> MetricsRow:
    """Metrics of a 1D history at ``generation``.

    ``stability`` is ``None`` for generations younger than the window, or
    everywhere when ``window`` is None.
    """
    if window is not None:
        if window < 1:
            raise ValueError("stability window must be at least 1")
        if window > history.generations:
            raise ValueError(f"window {window} exceeds the {history.generations} recorded generations")
    geno = history.genotypes[generation]
    stab = None
    if window is not None and generation >= window:
        stab = stability(history.genotypes, generation, window)
    return MetricsRow(
        generation=generation,
        phenotype_density=float(np.mean(history.phenotypes[generation])),
        genotype_entropy=genotype_entropy(geno),
        stability=stab,
        interesting_occupancy=family_occupancy(geno),
        rule_histogram=rule_histogram(geno),
    )


def metrics_2d(grid) -> MetricsRow:
    pop = grid.population
    mean_w = float(grid.weight[grid.alive].mean()) if pop else None
    return MetricsRow(
        generation=grid.generation,
        phenotype_density=pop / grid.alive.size,
        population=pop,
        mean_weight=mean_w,
    )


def stabilization_generation(
    rows: np.ndarray, threshold: float = 0.95, window: int = 10
) -> Optional[int]:
    """First generation from which stability stays at or above ``threshold``.

    Stability is only defined from generation ``window`` on; earlier
    generations count as stable once every defined value is.  ``None``
    means the final generation is still below the threshold (or there is
    no defined generation at all).
    """
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    rows = np.asarray(rows)
    last = rows.shape[0] - 1
    if last < window:
        return None
    stab = np.mean(rows[window:] == rows[:-window], axis=tuple(range(1, rows.ndim)))
    below = np.nonzero(stab < threshold)[0]
    if below.size == 0:
        return 0
    first_ok = int(below[-1]) + window + 1
    return first_ok if first_ok <= last else None


CSV_COLUMNS_1D = (
    ["generation", "phenotype_density", "genotype_entropy", "stability"]
    + [f"occupancy_{f.value}" for f in FAMILY_BASES]
    + [f"hist_{n:03d}" for n in range(256)]
)
CSV_COLUMNS_2D = ["generation", "population", "density", "mean_weight"]


def format_number(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(int(v))


def _row_values(row: MetricsRow, two_d: bool) -> list[str]:
    if two_d:
        vals = [row.generation, row.population, row.phenotype_density, row.mean_weight]
    else:
        vals = [row.generation, row.phenotype_density, row.genotype_entropy, row.stability]
        vals += [row.interesting_occupancy.get(f) for f in FAMILY_BASES]
        vals += list(row.rule_histogram)
    return [format_number(v) for v in vals]


def write_csv(rows: Iterable[MetricsRow], fh=None, two_d: bool = False) -> str:
    """Write rows with a fixed header; numbers use '.' and six decimals."""
    buf = io.StringIO() if fh is None else fh
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS_2D if two_d else CSV_COLUMNS_1D)
    for row in rows:
        writer.writerow(_row_values(row, two_d))
    return buf.getvalue() if fh is None else ""
