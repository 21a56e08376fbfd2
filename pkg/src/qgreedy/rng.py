"""Deterministic random streams for all budgeted searches.

Every randomized sample is drawn from a generator keyed by
``(seed, operation code, sample index)``.  Sample i therefore sees the same
stream no matter in which order, on which thread, or alongside which other
operations it is evaluated.
"""

from __future__ import annotations

import numpy as np

_SEED_MASK = (1 << 64) - 1

# Operation codes for substreams.  Stable identifiers: never reuse a value.
KU_SEARCH = 1
QG_SEARCH = 2
TRUNCATION_SEARCH = 3
CONDITIONALITY_SEARCH = 4
DEMOCRACY_SETS = 5
SUCC_PAIRS = 6
SIGN_CHANGE = 7
SUPER_DEMOCRACY = 8
KHINTCHINE_MC = 9
EMBED_SPACE = 10
EMBED_LORENTZ = 11
PAIR_FAMILY = 12
PERTURBED_BASIS = 13
VERIFY_VECTORS = 14


def substream(seed: int, *key: int) -> np.random.Generator:
    """Generator for the substream identified by ``key`` under ``seed``."""
    entropy = int(seed) & _SEED_MASK
    spawn_key = tuple(int(k) for k in key)
    return np.random.default_rng(np.random.SeedSequence(entropy=entropy, spawn_key=spawn_key))
