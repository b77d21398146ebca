"""Deterministic counter-based pseudo randomness.

Random potentials and the seeded experiment corpora must be reproducible
bit-for-bit across runs and platforms, so no stateful generator from the
standard library is used. Values come from splitmix64 applied to the pair
(seed, index); negative indices are folded in by zigzag encoding.
"""

_MASK = (1 << 64) - 1


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def counter_value(seed, index):
    """Pseudo random 64-bit word for an (unbounded, possibly negative) index."""
    u = (index << 1) if index >= 0 else ((-index << 1) - 1)
    return splitmix64(((seed & _MASK) ^ splitmix64(u & _MASK)))


class CounterRng:
    """Sequential facade over counter_value for corpus generation.

    randint uses plain modular reduction; the tiny bias is irrelevant for
    test corpora and keeps the stream trivially reproducible.
    """

    def __init__(self, seed, stream=0):
        self.seed = (seed & _MASK) ^ splitmix64((stream * 0x9E3779B97F4A7C15) & _MASK)
        self.index = 0

    def next_u64(self):
        v = counter_value(self.seed, self.index)
        self.index += 1
        return v

    def randint(self, lo, hi):
        """Uniform-ish integer in [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]
