"""Deterministic PRNG for the greedy scheduler.

The scheduler's shuffles use xoshiro256** (Blackman/Vigna) seeded through
SplitMix64, so traces are reproducible bit-for-bit across the pure-Python
and compiled cores. The compiled core carries its own C copy of the same
generator; any change here must be mirrored there.
"""

_MASK64 = (1 << 64) - 1


def splitmix64_next(state):
    """Advance a SplitMix64 state, returning (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def derive_seed(root, stream):
    """Derive an independent 64-bit child seed from (root, stream index)."""
    state = (int(root) & _MASK64) ^ ((int(stream) & _MASK64) * 0xD1B54A32D192ED03 & _MASK64)
    _, out = splitmix64_next(state)
    return out


class Xoshiro256StarStar:
    """xoshiro256** with unbiased bounded draws and Fisher-Yates shuffling."""

    def __init__(self, seed):
        state = int(seed) & _MASK64
        s = []
        for _ in range(4):
            state, out = splitmix64_next(state)
            s.append(out)
        if not any(s):  # all-zero state is a fixed point of the generator
            s[0] = 1
        self._s = s

    def next_u64(self):
        s0, s1, s2, s3 = self._s
        x = (s1 * 5) & _MASK64
        result = (((x << 7) | (x >> 57)) & _MASK64) * 9 & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        self._s = [s0, s1, s2, s3]
        return result

    def randbelow(self, n):
        """Uniform integer in [0, n) via rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        threshold = (_MASK64 + 1 - n) % n  # 2**64 mod n
        while True:
            x = self.next_u64()
            if x >= threshold:
                return x % n

    def shuffle(self, seq):
        """In-place Fisher-Yates shuffle (descending index order)."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randbelow(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
