"""One-dimensional MetaCA: a row of rule tables (genotype) driving a row
of bits (phenotype), with the rule tables themselves updated every
generation by a meta-rule and optional mutation.

Per generation, reading only the current lattice:

1. phenotype[j] <- genotype[j] applied to (p[j-1], p[j], p[j+1])
2. genotype[j]  <- meta(genotype[j-1], genotype[j], genotype[j+1])
3. mutation flips genotype bits, cells in order 0..W-1, bits in order 0..7

Genotype rows in a :class:`History1D` are stored as ascending rule numbers.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import blend1d
from .blend1d import BlendTemplate
from .rng import Xoshiro256StarStar
from .rules import RuleTable, ascending_bits

__all__ = [
    "Boundary",
    "MetaKind",
    "MetaRule1D",
    "MutationMode",
    "MutationSpec",
    "MUTATION_PRESETS",
    "Lattice1D",
    "History1D",
    "random_lattice",
    "step_genotype",
    "step_phenotype",
    "step",
    "run",
]

_WEIGHTS = np.array([128, 64, 32, 16, 8, 4, 2, 1], dtype=np.uint16)


class Boundary(enum.Enum):
    RING = "ring"
    DEAD = "dead"  # cells beyond the edge are 0 with the all-zero rule


class MetaKind(enum.Enum):
    MULTIPLY = "multiply"
    BLEND = "blend"
    TEMPLATE = "template"


@dataclass(frozen=True)
class MetaRule1D:
    kind: MetaKind = MetaKind.BLEND
    template: Optional[BlendTemplate] = None

    def __post_init__(self):
        if self.kind is MetaKind.TEMPLATE and self.template is None:
            object.__setattr__(self, "template", blend1d.censored_template())

    def apply_bits(self, left, local, right) -> np.ndarray:
        if self.kind is MetaKind.MULTIPLY:
            return blend1d.multiply_bits(left, local, right)
        if self.kind is MetaKind.BLEND:
            return blend1d.blend_bits(left, local, right)
        return blend1d.template_blend_bits(self.template, left, local, right)


class MutationMode(enum.Enum):
    NONE = "none"
    UNIFORM = "uniform"
    FIRST_BIT = "first_bit"


MUTATION_PRESETS = {"high": 0.05, "low": 0.002}


@dataclass(frozen=True)
class MutationSpec:
    """Per-bit flip probability.

    ``UNIFORM`` draws one number per bit (8 per cell); ``FIRST_BIT`` draws
    one per cell and can only flip allele 0 (the ``000`` output).
    """

    mode: MutationMode = MutationMode.NONE
    rate: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"mutation rate must lie in [0, 1], got {self.rate}")

    @classmethod
    def preset(cls, mode: MutationMode, name: str) -> MutationSpec:
        return cls(mode, MUTATION_PRESETS[name])


@dataclass
class Lattice1D:
    genotypes: np.ndarray  # (W, 8) uint8 rule bits
    phenotypes: np.ndarray  # (W,) uint8

    def __post_init__(self):
        self.genotypes = np.asarray(self.genotypes, dtype=np.uint8)
        self.phenotypes = np.asarray(self.phenotypes, dtype=np.uint8)
        if self.genotypes.ndim != 2 or self.genotypes.shape[1] != 8:
            raise ValueError("genotypes must have shape (W, 8)")
        if self.phenotypes.shape != (self.genotypes.shape[0],):
            raise ValueError("genotype and phenotype rows differ in length")
        if self.width < 3:
            raise ValueError(f"lattice width must be at least 3, got {self.width}")

    @property
    def width(self) -> int:
        return self.phenotypes.shape[0]

    @property
    def numbers(self) -> np.ndarray:
        """Ascending rule number of every cell."""
        return (self.genotypes.astype(np.uint16) @ _WEIGHTS).astype(np.uint8)

    @classmethod
    def from_rules(cls, rules: Sequence, phenotypes=None) -> Lattice1D:
        """Build from rule literals (strings or RuleTables) or ascending numbers."""
        rows = []
        for r in rules:
            if isinstance(r, str):
                r = RuleTable.from_string(r)
            if isinstance(r, RuleTable):
                rows.append(r.outputs)
            else:
                rows.append(ascending_bits(int(r)))
        if phenotypes is None:
            phenotypes = np.zeros(len(rows), dtype=np.uint8)
        elif isinstance(phenotypes, str):
            phenotypes = [int(ch) for ch in phenotypes]
        return cls(np.array(rows, dtype=np.uint8), np.asarray(phenotypes, dtype=np.uint8))

    def rule(self, j: int) -> RuleTable:
        return RuleTable(tuple(int(b) for b in self.genotypes[j]))

    def copy(self) -> Lattice1D:
        return Lattice1D(self.genotypes.copy(), self.phenotypes.copy())


@dataclass
class History1D:
    genotypes: np.ndarray  # (G+1, W) uint8 ascending rule numbers
    phenotypes: np.ndarray  # (G+1, W) uint8
    meta: dict = field(default_factory=dict)

    @property
    def generations(self) -> int:
        return self.genotypes.shape[0] - 1

    @property
    def width(self) -> int:
        return self.genotypes.shape[1]

    def lattice(self, generation: int) -> Lattice1D:
        return Lattice1D(ascending_bits(self.genotypes[generation]), self.phenotypes[generation])

    def to_text(self) -> str:
        """One line per generation: ``<gen> <phenotype bits> <rule> <rule> ...``."""
        lines = []
        for g in range(self.genotypes.shape[0]):
            pheno = "".join("1" if b else "0" for b in self.phenotypes[g])
            geno = " ".join(f"{int(n):08b}" for n in self.genotypes[g])
            lines.append(f"{g} {pheno} {geno}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> History1D:
        genos, phenos = [], []
        for g, line in enumerate(text.splitlines()):
            fields = line.split()
            if int(fields[0]) != g:
                raise ValueError(f"line {g + 1}: generation out of order")
            phenos.append([int(ch) for ch in fields[1]])
            genos.append([int(f, 2) for f in fields[2:]])
        return cls(np.array(genos, dtype=np.uint8), np.array(phenos, dtype=np.uint8))

    def __eq__(self, other):
        if not isinstance(other, History1D):
            return NotImplemented
        return np.array_equal(self.genotypes, other.genotypes) and np.array_equal(
            self.phenotypes, other.phenotypes
        )


def random_lattice(width: int, rng: Xoshiro256StarStar) -> Lattice1D:
    """Uniform rules (one draw per cell), then uniform bits (one draw per cell)."""
    numbers = np.array([x >> 56 for x in rng.raw(width)], dtype=np.uint8)
    bits = np.array([x >> 63 for x in rng.raw(width)], dtype=np.uint8)
    return Lattice1D(ascending_bits(numbers), bits)


def _neighbours(a: np.ndarray, boundary: Boundary) -> tuple[np.ndarray, np.ndarray]:
    if boundary is Boundary.RING:
        return np.roll(a, 1, axis=0), np.roll(a, -1, axis=0)
    pad = np.zeros_like(a[:1])
    return np.concatenate([pad, a[:-1]]), np.concatenate([a[1:], pad])


def step_phenotype(lattice: Lattice1D, boundary: Boundary = Boundary.RING) -> np.ndarray:
    p = lattice.phenotypes
    left, right = _neighbours(p, boundary)
    idx = (left.astype(np.intp) << 2) | (p.astype(np.intp) << 1) | right
    return lattice.genotypes[np.arange(lattice.width), idx].astype(np.uint8)


def _mutate(genotypes: np.ndarray, mutation: MutationSpec, rng: Xoshiro256StarStar) -> np.ndarray:
    if mutation.mode is MutationMode.NONE:
        return genotypes
    w = genotypes.shape[0]
    if mutation.mode is MutationMode.UNIFORM:
        flips = rng.random_array(w * 8).reshape(w, 8) < mutation.rate
    else:
        flips = np.zeros((w, 8), dtype=bool)
        flips[:, 0] = rng.random_array(w) < mutation.rate
    return genotypes ^ flips.astype(np.uint8)


def step_genotype(
    lattice: Lattice1D,
    meta: MetaRule1D,
    mutation: MutationSpec = MutationSpec(),
    rng: Optional[Xoshiro256StarStar] = None,
    boundary: Boundary = Boundary.RING,
) -> np.ndarray:
    g = lattice.genotypes
    left, right = _neighbours(g, boundary)
    new = meta.apply_bits(left, g, right)
    if mutation.mode is not MutationMode.NONE:
        if rng is None:
            raise ValueError("mutation needs a random stream")
        new = _mutate(new, mutation, rng)
    return new


def step(lattice, meta, mutation=MutationSpec(), rng=None, boundary=Boundary.RING) -> Lattice1D:
    phen = step_phenotype(lattice, boundary)
    gen = step_genotype(lattice, meta, mutation, rng, boundary)
    return Lattice1D(gen, phen)


def run(
    width: int,
    generations: int,
    meta: MetaRule1D = MetaRule1D(),
    mutation: MutationSpec = MutationSpec(),
    seed: int = 0,
    boundary: Boundary = Boundary.RING,
    initial: Optional[Lattice1D] = None,
) -> History1D:
    """Seed (unless ``initial`` is given) and run for ``generations`` steps.

    The random stream is seeded once from ``seed``; seeding draws come
    first, mutation draws follow generation by generation.
    """
    if width < 3:
        raise ValueError(f"width must be at least 3, got {width}")
    if generations < 0:
        raise ValueError("generations must be non-negative")
    rng = Xoshiro256StarStar(seed)
    lattice = random_lattice(width, rng) if initial is None else initial.copy()
    if lattice.width != width:
        raise ValueError("initial lattice width does not match")

    genos = np.empty((generations + 1, width), dtype=np.uint8)
    phenos = np.empty((generations + 1, width), dtype=np.uint8)
    genos[0], phenos[0] = lattice.numbers, lattice.phenotypes
    for t in range(1, generations + 1):
        lattice = step(lattice, meta, mutation, rng, boundary)
        genos[t], phenos[t] = lattice.numbers, lattice.phenotypes
    return History1D(
        genos,
        phenos,
        meta={"seed": seed, "meta": meta.kind.value, "mutation": mutation.mode.value},
    )
