"""Counter-addressable random streams.

Every draw is a pure function of ``(seed, purpose, index)``. Row ``k`` of a
uniform block is read directly from the Philox counter ``k * stride``, so a
block can be produced in any chunking, on any thread, with identical bits.
"""

import numpy as np

# purpose tags keep Monte Carlo, PSO and probe draws independent under one seed
MONTE_CARLO = 0
PSO = 1
PROBE = 2

_WORDS_PER_COUNTER = 4  # Philox4x64 emits four 64-bit words per counter step


def _derive_key(seed: int, *path: int) -> np.ndarray:
    if seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(p) for p in path))
    return ss.generate_state(2, dtype=np.uint64)


class RandomStream:
    """Seeded family of independent substreams.

    Parameters
    ----------
    seed : int
        Unsigned 64-bit master seed.
    purpose : int
        Tag separating draws of different consumers sharing a seed.
    """

    def __init__(self, seed: int, purpose: int = MONTE_CARLO):
        self.seed = int(seed)
        self.purpose = int(purpose)
        self._key = _derive_key(self.seed, self.purpose)

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, purpose={self.purpose})"

    def uniforms(self, start: int, count: int, width: int) -> np.ndarray:
        """Rows ``start .. start+count-1`` of uniform [0, 1) draws, ``width`` per row.

        Row ``k`` is the same regardless of ``start`` and ``count``.
        """
        if start < 0 or count < 0 or width < 1:
            raise ValueError("start and count must be >= 0 and width >= 1")
        stride = -(-width // _WORDS_PER_COUNTER)
        bitgen = np.random.Philox(key=self._key, counter=int(start) * stride)
        block = np.random.Generator(bitgen).random((count, stride * _WORDS_PER_COUNTER))
        return block[:, :width]

    def generator(self, index: int) -> np.random.Generator:
        """Sequential generator for substream ``index`` (e.g. one PSO restart)."""
        return np.random.Generator(
            np.random.Philox(key=_derive_key(self.seed, self.purpose, 1 + int(index)))
        )
