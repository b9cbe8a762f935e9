"""Seed handling: every randomized operation takes an explicit seed.

A seed may be an int, a numpy ``SeedSequence`` or an already-built
``Generator``.  Passing a ``Generator`` lets callers draw several dependent
samples from one stream; everything else creates a fresh deterministic
stream.  Derived streams (registry records, parallel trials) are produced by
``SeedSequence`` spawning, never by reusing a parent stream.
"""

from __future__ import annotations

from typing import Union

import numpy as np

Seed = Union[int, np.random.SeedSequence, np.random.Generator]


def as_generator(seed: Seed) -> np.random.Generator:
    """Normalize an explicit seed into a numpy Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    if isinstance(seed, (int, np.integer)):
        return np.random.default_rng(int(seed))
    raise TypeError(f"expected int, SeedSequence or Generator, got {type(seed).__name__}")


def derive_sequence(*entropy: int) -> np.random.SeedSequence:
    """Keyed derivation: a SeedSequence determined by the given non-negative ints."""
    if any(e < 0 for e in entropy):
        raise ValueError("entropy components must be non-negative")
    return np.random.SeedSequence(list(entropy))
