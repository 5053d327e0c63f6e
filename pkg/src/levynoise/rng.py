"""Reproducible random streams.

Every Monte Carlo routine in the package draws from a counter-based
(Philox) generator keyed by an integer path, e.g. ``(master_seed,
check_index)``.  Streams with distinct key paths are statistically
independent and do not depend on the order in which they are consumed,
so adding, removing or reordering checks never perturbs the draws of
the others.
"""

from __future__ import annotations

import numpy as np


def derive_rng(*key_path: int) -> np.random.Generator:
    """Return a Philox generator keyed by the given integer path.

    The same path always yields the bit-identical stream.  Components
    must be non-negative integers (any size; they are hashed through
    ``numpy.random.SeedSequence``).
    """
    if not key_path:
        raise ValueError("key path must contain at least one integer")
    for part in key_path:
        if part < 0:
            raise ValueError(f"key path components must be >= 0, got {part}")
    seq = np.random.SeedSequence(tuple(int(p) for p in key_path))
    return np.random.Generator(np.random.Philox(seq))


def derive_seed(*key_path: int) -> int:
    """Collapse an integer key path into one well-mixed 64-bit seed."""
    seq = np.random.SeedSequence(tuple(int(p) for p in key_path))
    return int(seq.generate_state(1, np.uint64)[0])
