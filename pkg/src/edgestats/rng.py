"""Seeded randomness primitives shared by every randomized operation.

All sampling in this package is driven by CPython's Mersenne Twister
(MT19937) as exposed by ``random.Random``, consumed exclusively through
``getrandbits``.  The three helpers below define the complete draw
protocol, so identical seeds reproduce identical outputs bit for bit on
any platform:

* ``rand_below(rng, n)``   -- rejection sampling on ``getrandbits(n.bit_length())``
* ``sample_ordered``       -- partial Fisher-Yates using ``rand_below``
* ``bernoulli``            -- exact rational coin: ``rand_below(den) < num``

Nothing here ever calls ``random()``, ``sample`` or ``choice``, whose
draw orders are not pinned by the language reference.
"""

from __future__ import annotations

import random
from fractions import Fraction

__all__ = ["new_generator", "rand_below", "sample_ordered", "bernoulli", "rademacher"]


def new_generator(seed: int) -> random.Random:
    """Return a fresh MT19937 generator initialised with ``seed``."""
    if not isinstance(seed, int):
        raise ValueError(f"seed must be an integer, got {seed!r}")
    return random.Random(seed)


def rand_below(rng: random.Random, n: int) -> int:
    """Uniform integer in [0, n) via unbiased rejection on getrandbits."""
    if n <= 0:
        raise ValueError(f"rand_below needs a positive bound, got {n}")
    k = n.bit_length()
    r = rng.getrandbits(k)
    while r >= n:
        r = rng.getrandbits(k)
    return r


def sample_ordered(rng: random.Random, n: int, k: int) -> list[int]:
    """Ordered sample of k distinct vertices from [1..n].

    Partial Fisher-Yates: position i swaps with i + rand_below(n - i).
    The returned order is part of the draw protocol (couplings consume it
    pairwise), so callers that need a set must discard it themselves.
    """
    if not 0 <= k <= n:
        raise ValueError(f"cannot sample {k} distinct vertices from [1..{n}]")
    pool = list(range(1, n + 1))
    for i in range(k):
        j = i + rand_below(rng, n - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


def bernoulli(rng: random.Random, p: Fraction) -> bool:
    """Exact Bernoulli(p) draw for rational p in [0, 1]."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"Bernoulli parameter must lie in [0, 1], got {p}")
    if p == 0:
        return False
    return rand_below(rng, p.denominator) < p.numerator


def rademacher(rng: random.Random) -> int:
    """Uniform sign: getrandbits(1) == 1 maps to +1, else -1."""
    return 1 if rng.getrandbits(1) else -1
