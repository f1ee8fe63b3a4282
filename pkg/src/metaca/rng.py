"""Portable, bit-exact random streams.

The generator is xoshiro256** whose 256-bit state is filled by four
successive splitmix64 outputs of the seed.  Derived quantities:

* ``next_u64()``  raw 64-bit output
* ``random()``    ``(x >> 11) * 2**-53``, a double in [0, 1)
* ``below(n)``    ``(x * n) >> 64``, an integer in [0, n)

Independent sub-streams (e.g. sweep members) use
``derive_seed(master, index) = splitmix64_first(master ^ index)``.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

__all__ = ["splitmix64", "derive_seed", "Xoshiro256StarStar"]


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(seed: int, count: int) -> list[int]:
    """First ``count`` outputs of splitmix64 started at ``seed``."""
    state = seed & MASK64
    out = []
    for _ in range(count):
        state = (state + GOLDEN) & MASK64
        out.append(_mix(state))
    return out


def derive_seed(master: int, index: int) -> int:
    return splitmix64((master ^ index) & MASK64, 1)[0]


class Xoshiro256StarStar:
    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int = 0, *, state: tuple[int, int, int, int] | None = None):
        if state is None:
            state = tuple(splitmix64(seed, 4))
        if len(state) != 4 or not any(state):
            raise ValueError("xoshiro256** needs four words, not all zero")
        self._s0, self._s1, self._s2, self._s3 = (s & MASK64 for s in state)

    @property
    def state(self) -> tuple[int, int, int, int]:
        return (self._s0, self._s1, self._s2, self._s3)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        x = (s1 * 5) & MASK64
        result = ((((x << 7) | (x >> 57)) & MASK64) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def raw(self, n: int) -> list[int]:
        """``n`` consecutive outputs; same stream as calling ``next_u64`` n times."""
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        M = MASK64
        out = [0] * n
        for k in range(n):
            x = (s1 * 5) & M
            out[k] = ((((x << 7) | (x >> 57)) & M) * 9) & M
            t = (s1 << 17) & M
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = ((s3 << 45) | (s3 >> 19)) & M
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return out

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def random_array(self, n: int) -> np.ndarray:
        raw = np.array(self.raw(n), dtype=np.uint64)
        return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return (self.next_u64() * n) >> 64

    def below_array(self, n: int, count: int) -> np.ndarray:
        if n <= 0:
            raise ValueError("below_array() needs a positive bound")
        return np.array([(x * n) >> 64 for x in self.raw(count)], dtype=np.int64)
