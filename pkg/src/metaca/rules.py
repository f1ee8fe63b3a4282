"""Elementary (radius-1, two-state) rule tables.

A rule table stores 8 output bits indexed by the neighbourhood value
``n = 4*left + 2*center + right``.  Tables print as 8-character strings in
ascending neighbourhood order, so the leftmost character is the output for
``000`` and the rightmost the output for ``111``.

Two numberings are supported:

* ``Convention.ASCENDING`` reads the printed string as a big-endian binary
  number (``"01010100"`` is 84).
* ``Convention.WOLFRAM`` is the usual literature numbering, the sum of
  ``outputs[n] * 2**n``; ``"01010100"`` is 42 here.

The two are bit reversals of one another.  Bitwise meta-rules work on the
ascending order; family classification uses Wolfram numbers.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "Convention",
    "Family",
    "RuleTable",
    "apply_rule",
    "from_number",
    "to_number",
    "reverse_bits8",
    "mirror",
    "complement",
    "family_members",
    "classify",
    "FAMILY_BASES",
    "family_lookup",
    "ascending_bits",
]


class Convention(enum.Enum):
    ASCENDING = "ascending"
    WOLFRAM = "wolfram"


class Family(enum.Enum):
    """Highlighted rule families, in the order they are matched."""

    RULE_110 = 110
    RULE_30 = 30
    RULE_90 = 90
    RULE_184 = 184
    OTHER = -1


FAMILY_BASES: tuple[Family, ...] = (
    Family.RULE_110,
    Family.RULE_30,
    Family.RULE_90,
    Family.RULE_184,
)


@dataclass(frozen=True)
class RuleTable:
    outputs: tuple[int, ...]

    def __post_init__(self):
        if len(self.outputs) != 8:
            raise ValueError(f"a rule table needs 8 outputs, got {len(self.outputs)}")
        if any(b not in (0, 1) for b in self.outputs):
            raise ValueError(f"rule outputs must be 0 or 1: {self.outputs!r}")
        object.__setattr__(self, "outputs", tuple(int(b) for b in self.outputs))

    @classmethod
    def from_string(cls, text: str) -> RuleTable:
        text = text.strip()
        if len(text) != 8 or set(text) - {"0", "1"}:
            raise ValueError(f"expected 8 characters of '0'/'1', got {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.outputs)

    def __getitem__(self, n: int) -> int:
        return self.outputs[n]

    def number(self, convention: Convention = Convention.ASCENDING) -> int:
        return to_number(self, convention)


def apply_rule(rule: RuleTable, left: int, center: int, right: int) -> int:
    return rule.outputs[4 * left + 2 * center + right]


def reverse_bits8(value: int) -> int:
    return _REVERSED[value]


_REVERSED = tuple(int(f"{v:08b}"[::-1], 2) for v in range(256))
# Every table exists once; conversions are lookups.
_BY_ASCENDING = tuple(RuleTable(tuple((v >> (7 - n)) & 1 for n in range(8))) for v in range(256))
_ASCENDING_OF = {r.outputs: v for v, r in enumerate(_BY_ASCENDING)}


def to_number(rule: RuleTable, convention: Convention = Convention.ASCENDING) -> int:
    n = _ASCENDING_OF[rule.outputs]
    return n if convention is Convention.ASCENDING else _REVERSED[n]


def from_number(value: int, convention: Convention = Convention.ASCENDING) -> RuleTable:
    value = int(value)
    if not 0 <= value <= 255:
        raise ValueError(f"rule number out of range 0..255: {value}")
    return _BY_ASCENDING[value if convention is Convention.ASCENDING else _REVERSED[value]]


def mirror(rule: RuleTable) -> RuleTable:
    """Left-right reflection: the output for (l, c, r) moves to (r, c, l)."""
    out = [0] * 8
    for n in range(8):
        l, c, r = n >> 2, (n >> 1) & 1, n & 1
        out[4 * r + 2 * c + l] = rule.outputs[n]
    return RuleTable(tuple(out))


def complement(rule: RuleTable) -> RuleTable:
    """Conjugation under 0 <-> 1: output for n becomes ``1 - outputs[7 - n]``."""
    return RuleTable(tuple(1 - rule.outputs[7 - n] for n in range(8)))


def family_members(base: RuleTable) -> frozenset[RuleTable]:
    """Closure of ``base`` under mirror and complement (1, 2 or 4 tables)."""
    return frozenset({base, mirror(base), complement(base), complement(mirror(base))})


@lru_cache(maxsize=None)
def _family_sets() -> tuple[tuple[Family, frozenset[RuleTable]], ...]:
    return tuple(
        (fam, family_members(from_number(fam.value, Convention.WOLFRAM)))
        for fam in FAMILY_BASES
    )


def classify(rule: RuleTable) -> Family:
    for fam, members in _family_sets():
        if rule in members:
            return fam
    return Family.OTHER


@lru_cache(maxsize=None)
def family_lookup() -> np.ndarray:
    """Index into ``FAMILY_BASES`` (or -1) for every ascending rule number."""
    table = np.full(256, -1, dtype=np.int8)
    for num in range(256):
        fam = classify(from_number(num))
        if fam is not Family.OTHER:
            table[num] = FAMILY_BASES.index(fam)
    table.setflags(write=False)
    return table


def ascending_bits(numbers) -> np.ndarray:
    """Ascending rule numbers -> uint8 array of shape (..., 8) of outputs."""
    numbers = np.asarray(numbers, dtype=np.uint8)
    return np.unpackbits(numbers[..., None], axis=-1)
