"""Deterministic counter-based sample generator.

The verification harness must produce byte-identical reports for identical
configurations, and the sampled points must be reproducible from the report
alone (including by re-implementations in other languages).  So instead of a
stateful library RNG we use a splittable counter scheme built on the SplitMix64
finalizer:

    mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4B209;
              z ^= z >> 27; z *= 0x94D049BB133111EB;
              z ^= z >> 31                       (all mod 2^64)

    stream_seed(seed, label) = mix64(seed XOR fnv1a64(label))
    value(i)   = mix64((stream_seed + (i+1) * 0x9E3779B97F4A7C15) mod 2^64)
    float53(i) = (value(i) >> 11) * 2^-53        in [0, 1)

where fnv1a64 is the standard 64-bit FNV-1a hash of the label's UTF-8 bytes.
Each suite derives its own stream from the run seed and the suite name, so
adding samples to one suite never shifts another suite's draws.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit word."""
    z &= _MASK
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4B209) & _MASK
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return z


def fnv1a64(text: str) -> int:
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * 0x100000001B3) & _MASK
    return h


class SampleStream:
    """Counter-based stream of uniform deviates, addressed by (seed, label)."""

    def __init__(self, seed: int, label: str):
        self.seed = seed & _MASK
        self.label = label
        self._base = mix64(self.seed ^ fnv1a64(label))
        self._counter = 0

    def next_u64(self) -> int:
        self._counter += 1
        return mix64((self._base + self._counter * _GOLDEN) & _MASK)

    def next_float(self) -> float:
        # 53-bit mantissa, uniform in [0, 1)
        return (self.next_u64() >> 11) * 2.0**-53

    def next_uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()

    def next_complex(self, re_lo: float, re_hi: float, im_lo: float, im_hi: float) -> complex:
        re = self.next_uniform(re_lo, re_hi)
        im = self.next_uniform(im_lo, im_hi)
        return complex(re, im)
