# rng.py
# MIT License 2026
from zlib import crc32

import numpy as np

# seeds are 64-bit unsigned integers
SEED_MASK = (1 << 64) - 1


def derive_rng(master_seed: int, purpose: str, *index: int) -> np.random.Generator:
    """Derive an independent random stream from a master seed, a purpose tag and an index.

    Streams only depend on their arguments, never on the order in which they are requested,
    so trees, folds or parcels can be processed in parallel without changing the results.

    Args:
      * master_seed: The run master seed.
      * purpose: Name of the consumer of the stream, e.g., "split" or "bootstrap".
      * index: Optional position of the consumer, e.g., the tree number.

    Returns: A numpy random generator.

    Example:
      >>> rng = derive_rng(42, "bootstrap", 3)
      >>> rng.integers(0, 10, size=4)
    """
    key = (crc32(purpose.encode("utf-8")),) + tuple(int(i) for i in index)
    return np.random.default_rng(np.random.SeedSequence(entropy=int(master_seed) & SEED_MASK, spawn_key=key))
