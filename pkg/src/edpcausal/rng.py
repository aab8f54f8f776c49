"""Deterministic random-stream derivation.

All randomness in the package flows from one top-level seed.  Sub-streams are
keyed by small integer tuples (chain index, replicate index, purpose code,
...) so that runs are reproducible and parallel workers never share a stream.
"""

import numpy as np

# purpose codes for stream derivation, kept stable for reproducibility
CHAIN = 0
REPLICATE = 1
EFFECTS = 2
TRUTH = 3
BOOTSTRAP = 4


def substream(seed: int, *key: int) -> np.random.Generator:
    """Return a Generator for ``seed`` specialized by an integer key path."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))
