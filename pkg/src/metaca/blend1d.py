"""Meta-rules that combine three neighbouring rule tables into one.

Every meta-rule works allele by allele.  At allele ``i`` the three inputs
contribute the bits ``left[i]``, ``local[i]`` and ``right[i]``; "local logic"
means looking that triple up in the *local* (centre) table.

* ``multiply`` always uses local logic.
* ``blend`` copies the neighbours' bit where they agree and falls back to
  local logic where they disagree.
* ``template_blend`` looks each allele's triple up in a template: a locked
  output, or ``*`` for local logic.  The censored template (locked exactly
  where the outer two bits agree) reproduces ``blend``.

Scalar versions operate on :class:`~metaca.rules.RuleTable`; the ``*_bits``
versions operate on uint8 arrays of shape ``(..., 8)`` and back the
simulator.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .rules import RuleTable, apply_rule

__all__ = [
    "PartialRuleTable",
    "BlendTemplate",
    "multiply",
    "generic_space",
    "weaken",
    "complete",
    "blend",
    "self_rule",
    "censored_template",
    "template_blend",
    "multiply_bits",
    "blend_bits",
    "template_blend_bits",
    "load_vectors",
    "worked_examples_path",
]


@dataclass(frozen=True)
class PartialRuleTable:
    """Rule table with possibly undefined entries (``None``)."""

    outputs: tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.outputs) != 8:
            raise ValueError("a partial rule table needs 8 entries")
        if any(b not in (0, 1, None) for b in self.outputs):
            raise ValueError(f"entries must be 0, 1 or None: {self.outputs!r}")

    @classmethod
    def from_string(cls, text: str) -> PartialRuleTable:
        """Parse e.g. ``"01???1??"``; ``?`` marks an undefined entry."""
        if len(text) != 8 or set(text) - {"0", "1", "?"}:
            raise ValueError(f"bad partial rule literal {text!r}")
        return cls(tuple(None if ch == "?" else int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join("?" if b is None else str(b) for b in self.outputs)

    @property
    def defined(self) -> frozenset[int]:
        return frozenset(i for i, b in enumerate(self.outputs) if b is not None)

    def is_total(self) -> bool:
        return len(self.defined) == 8

    def to_total(self) -> RuleTable:
        if not self.is_total():
            raise ValueError(f"table {self} still has undefined entries")
        return RuleTable(self.outputs)


@dataclass(frozen=True)
class BlendTemplate:
    """A rule table with holes, indexed like any rule by the neighbourhood
    value of an allele triple: a locked bit (0/1) or ``None`` for local logic.
    """

    decisions: tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.decisions) != 8:
            raise ValueError("a blend template needs 8 entries")
        if any(d not in (0, 1, None) for d in self.decisions):
            raise ValueError(f"template entries must be 0, 1 or None: {self.decisions!r}")

    @classmethod
    def from_string(cls, text: str) -> BlendTemplate:
        """Parse e.g. ``"0*0**1*1"``; ``*`` marks local logic."""
        text = text.strip()
        if len(text) != 8 or set(text) - {"0", "1", "*"}:
            raise ValueError(f"bad template literal {text!r}")
        return cls(tuple(None if ch == "*" else int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join("*" if d is None else str(d) for d in self.decisions)

    @property
    def open_cases(self) -> tuple[int, ...]:
        """Neighbourhood values that defer to the local rule."""
        return tuple(n for n, d in enumerate(self.decisions) if d is None)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(locked mask, locked values) as uint8/bool arrays of length 8."""
        locked = np.array([d is not None for d in self.decisions])
        values = np.array([0 if d is None else d for d in self.decisions], dtype=np.uint8)
        return locked, values


def _local_logic(left: RuleTable, local: RuleTable, right: RuleTable, i: int) -> int:
    return apply_rule(local, left[i], local[i], right[i])


def multiply(left: RuleTable, local: RuleTable, right: RuleTable) -> RuleTable:
    return RuleTable(tuple(_local_logic(left, local, right, i) for i in range(8)))


def generic_space(left: RuleTable, right: RuleTable) -> PartialRuleTable:
    return PartialRuleTable(
        tuple(a if a == b else None for a, b in zip(left.outputs, right.outputs))
    )


def weaken(rule: RuleTable, conflicts: Iterable[int]) -> PartialRuleTable:
    """Drop the entries listed in ``conflicts``."""
    conflicts = set(conflicts)
    bad = [i for i in conflicts if not (isinstance(i, (int, np.integer)) and 0 <= i <= 7)]
    if bad:
        raise ValueError(f"allele indices out of range 0..7: {sorted(bad)}")
    return PartialRuleTable(
        tuple(None if i in conflicts else b for i, b in enumerate(rule.outputs))
    )


def complete(
    partial: PartialRuleTable, left: RuleTable, local: RuleTable, right: RuleTable
) -> RuleTable:
    """Fill every undefined entry of ``partial`` by local logic."""
    return RuleTable(
        tuple(
            _local_logic(left, local, right, i) if b is None else b
            for i, b in enumerate(partial.outputs)
        )
    )


def blend(left: RuleTable, local: RuleTable, right: RuleTable) -> RuleTable:
    out = []
    for i in range(8):
        if left[i] == right[i]:
            out.append(left[i])
        else:
            out.append(_local_logic(left, local, right, i))
    return RuleTable(tuple(out))


def self_rule() -> RuleTable:
    """The blending principle as an ordinary rule, with the cell's own
    state standing in for local logic.
    """
    out = []
    for n in range(8):
        l, c, r = n >> 2, (n >> 1) & 1, n & 1
        out.append(l if l == r else c)
    return RuleTable(tuple(out))


def censored_template() -> BlendTemplate:
    # Locked wherever the outer pair of a neighbourhood agrees: 000, 010, 101, 111.
    return BlendTemplate.from_string("0*0**1*1")


def template_blend(
    template: BlendTemplate, left: RuleTable, local: RuleTable, right: RuleTable
) -> RuleTable:
    out = []
    for i in range(8):
        n = 4 * left[i] + 2 * local[i] + right[i]
        d = template.decisions[n]
        out.append(local[n] if d is None else d)
    return RuleTable(tuple(out))


# -- array versions ---------------------------------------------------------


def multiply_bits(left: np.ndarray, local: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Vectorised ``multiply`` over arrays of shape (..., 8) with 0/1 entries."""
    idx = (left.astype(np.intp) << 2) | (local.astype(np.intp) << 1) | right
    return np.take_along_axis(local, idx, axis=-1).astype(np.uint8)


def blend_bits(left: np.ndarray, local: np.ndarray, right: np.ndarray) -> np.ndarray:
    return np.where(left == right, left, multiply_bits(left, local, right)).astype(np.uint8)


def template_blend_bits(
    template: BlendTemplate, left: np.ndarray, local: np.ndarray, right: np.ndarray
) -> np.ndarray:
    locked, values = template.arrays()
    idx = (left.astype(np.intp) << 2) | (local.astype(np.intp) << 1) | right
    looked_up = np.take_along_axis(local, idx, axis=-1)
    return np.where(locked[idx], values[idx], looked_up).astype(np.uint8)


# -- test vectors -----------------------------------------------------------


def worked_examples_path(kind: str) -> Path:
    """Path of the shipped vector file for ``kind`` in {"multiply", "blend"}."""
    if kind not in ("multiply", "blend"):
        raise ValueError(f"unknown vector kind {kind!r}")
    return Path(__file__).with_name("data") / f"{kind}_vectors.txt"


def load_vectors(path) -> list[tuple[RuleTable, RuleTable, RuleTable, RuleTable]]:
    """Read ``left local right expected`` lines; ``#`` starts a comment."""
    cases = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 fields, got {len(fields)}")
        cases.append(tuple(RuleTable.from_string(f) for f in fields))
    return cases
