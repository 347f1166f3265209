"""Deterministic vertex weight generation.

Weights come from a splitmix64 stream so that a (bounds, seed) pair yields the
same vector on any platform or implementation: the 64-bit state advances by
the golden-ratio increment and each output is finalized with two xor-multiply
rounds, then mapped to [lo, hi] by modulus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadBounds

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass(frozen=True)
class WeightGenSpec:
    lo: int
    hi: int
    seed: int

    def __post_init__(self):
        if not (1 <= self.lo <= self.hi):
            raise BadBounds(f"need 1 <= lo <= hi, got [{self.lo}, {self.hi}]")


def splitmix64(seed: int):
    """Infinite stream of 64-bit values."""
    state = seed & _MASK
    while True:
        state = (state + _GAMMA) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        yield z ^ (z >> 31)


def gen_weights(n: int, spec: WeightGenSpec) -> list[int]:
    """n integers i.i.d. uniform on [lo, hi], reproducible per seed."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    span = spec.hi - spec.lo + 1
    stream = splitmix64(spec.seed)
    return [spec.lo + next(stream) % span for _ in range(n)]


def parse_weight_source(source: str) -> WeightGenSpec | str:
    """Either a ``gen:uniform:LO:HI:SEED`` spec or a path to a weight file."""
    if source.startswith("gen:"):
        parts = source.split(":")
        if len(parts) != 5 or parts[1] != "uniform":
            raise BadBounds(f"bad generator spec {source!r}; want gen:uniform:LO:HI:SEED")
        return WeightGenSpec(lo=int(parts[2]), hi=int(parts[3]), seed=int(parts[4]))
    return source
