"""Key-derived, reproducible randomness.

Every stochastic component in this package (random/noisy prediction models,
the fixture generator, trial scheduling, simulated raters) draws from streams
that are pure functions of a string-able key.  The mapping is fixed:

    key_bytes = UTF-8 JSON array of the key parts, compact separators
    digest    = blake2b(key_bytes, digest_size=8)
    value     = int.from_bytes(digest, "big")

A uniform draw is ``value / 2**64``.  Nothing here depends on interpreter
RNG state, process order, or library versions, so any run with the same
keys reproduces the same bits.
"""
from __future__ import annotations

import json
import math
from hashlib import blake2b

_SCALE = 2.0 ** 64


def _key_bytes(parts: tuple) -> bytes:
    return json.dumps(list(parts), separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def derive_seed(*parts) -> int:
    """64-bit integer derived from the key parts."""
    digest = blake2b(_key_bytes(parts), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def unit_draw(*parts) -> float:
    """Uniform draw in [0, 1) fully determined by the key parts."""
    return derive_seed(*parts) / _SCALE


def unit_draws(parts: tuple, count: int) -> list[float]:
    """Batch form: ``[unit_draw(*parts, i) for i in range(count)]``.

    Bit-identical to the scalar mapping — the shared key prefix is just
    serialized once instead of per draw.
    """
    prefix = _key_bytes(parts)[:-1]  # drop the closing bracket
    sep = b"," if parts else b""
    out = []
    for i in range(count):
        digest = blake2b(b"%s%s%d]" % (prefix, sep, i), digest_size=8).digest()
        out.append(int.from_bytes(digest, "big") / _SCALE)
    return out


class KeyedStream:
    """Counter-mode stream of draws under one key.

    ``KeyedStream(a, b).draw()`` yields ``unit_draw(a, b, 0)``, then
    ``unit_draw(a, b, 1)``, and so on.  Convenience samplers are built
    only on :meth:`draw` so the whole stream stays pinned to the key.
    """

    def __init__(self, *parts):
        self._parts = parts
        self._counter = 0

    def draw(self) -> float:
        value = unit_draw(*self._parts, self._counter)
        self._counter += 1
        return value

    def randint(self, low: int, high: int) -> int:
        """Integer in [low, high], endpoints inclusive."""
        if high < low:
            raise ValueError(f"empty range [{low}, {high}]")
        return low + int(self.draw() * (high - low + 1))

    def choice(self, seq):
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.randint(0, len(seq) - 1)]

    def sample(self, seq, k: int) -> list:
        """k distinct elements, order randomized (Fisher-Yates prefix)."""
        if k < 0 or k > len(seq):
            raise ValueError(f"cannot sample {k} of {len(seq)}")
        pool = list(seq)
        for i in range(k):
            j = self.randint(i, len(pool) - 1)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]

    def gauss(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Normal deviate via Box-Muller on two stream draws."""
        u1 = 1.0 - self.draw()  # (0, 1]: keeps log() finite
        u2 = self.draw()
        z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
        return mu + sigma * z

    def bernoulli(self, p: float) -> bool:
        return self.draw() < p
