"""Seeded, splittable randomness and the noise primitives.

All randomness in the package flows through ``RngStream``.  Derived
streams come only from ``split`` (SeedSequence.spawn), so any pipeline is
reproducible from a single 64-bit seed regardless of how many components
consume noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphcore import Scale


@dataclass(frozen=True)
class NoiseSpec:
    """Noise parameters: Exp rate ``epsilon``, neighbor granularity
    ``tau``, and a default seed used when no stream is supplied.

    ``epsilon`` is the raw rate of the added Exp noise; the distinguishing
    advantage bound this buys is ``4 * tau * epsilon``, which is what the
    auditor checks against.
    """

    epsilon: float
    tau: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.tau < 0:
            raise ValueError(f"tau must be nonnegative, got {self.tau}")


class RngStream:
    """A numpy Generator paired with the SeedSequence that created it.

    ``split(k)`` spawns k child streams; children are independent of each
    other and of the parent's subsequent draws.  Splitting is the only
    derivation rule used in this package.
    """

    __slots__ = ("seq", "gen")

    def __init__(self, seed: int | np.random.SeedSequence = 0):
        if isinstance(seed, np.random.SeedSequence):
            self.seq = seed
        else:
            self.seq = np.random.SeedSequence(seed)
        self.gen = np.random.Generator(np.random.PCG64(self.seq))

    def split(self, k: int) -> list[RngStream]:
        return [RngStream(child) for child in self.seq.spawn(k)]

    def uniform(self) -> float:
        return float(self.gen.random())

    def uniform_block(self, size: int) -> np.ndarray:
        return self.gen.random(size)

    def integers(self, low: int, high: int) -> int:
        """One integer from [low, high)."""
        return int(self.gen.integers(low, high))

    def integers_block(self, low: int, high: int, size: int) -> np.ndarray:
        return self.gen.integers(low, high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        return self.gen.permutation(n)


def sample_exp(rate: float, rng: RngStream) -> float:
    """Exp(rate) by inverse transform: -log(1 - U) / rate, U ~ [0, 1)."""
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    return -math.log1p(-rng.uniform()) / rate


def sample_exp_block(rate: float, size: int, rng: RngStream) -> np.ndarray:
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    return -np.log1p(-rng.uniform_block(size)) / rate


def sample_lap(scale_b: float, rng: RngStream) -> float:
    """Laplace(0, scale_b) by the symmetric inverse-CDF transform."""
    if scale_b <= 0:
        raise ValueError(f"scale must be positive, got {scale_b}")
    u = rng.uniform()
    if u == 0.0:
        u = 2.0**-53  # keep the transform finite on the measure-zero draw
    if u < 0.5:
        return scale_b * math.log(2.0 * u)
    return -scale_b * math.log(2.0 * (1.0 - u))


def quantize_weight(x: float, scale: Scale) -> int:
    """Mantissa of a nonnegative sampled value: truncate toward zero at
    ``frac_bits`` fractional bits, low payload bits left at zero."""
    if x < 0:
        raise ValueError(f"cannot quantize negative weight {x}")
    return math.trunc(x * (1 << scale.frac_bits)) << scale.shift
