"""Average packet error rate of a single hop.

The shipped model is the closed form for an uncoded packet over a flat
Rayleigh fading channel, parameterized by MCS fit constants, packet
length, path loss, and receiver noise density.
"""

import math
from dataclasses import dataclass


class PhyError(ValueError):
    """Invalid PHY parameter or unknown PER model."""


@dataclass(frozen=True)
class McsParams:
    """Modulation/coding fit constants and packet length.

    gamma_pn is stored linear; use from_db() when configuring the
    threshold in dB.
    """

    a_n: float
    g_n: float
    gamma_pn: float
    b: int = 1
    length: int = 1080

    def __post_init__(self):
        if self.a_n <= 0 or self.g_n <= 0 or self.gamma_pn <= 0:
            raise PhyError("MCS constants a_n, g_n, gamma_pn must be positive")
        if self.b < 1:
            raise PhyError(f"bits per symbol must be >= 1, got {self.b}")
        if self.length < 1:
            raise PhyError(f"packet length must be >= 1, got {self.length}")

    @classmethod
    def from_db(cls, a_n, g_n, gamma_pn_db, b=1, length=1080):
        return cls(a_n=a_n, g_n=g_n, gamma_pn=db_to_linear(gamma_pn_db),
                   b=b, length=length)


@dataclass(frozen=True)
class ChannelParams:
    """Noise density, path-loss exponent, antenna gain, and peak symbol energy."""

    n0: float
    alpha: float
    gain: float = 1.0
    e_max: float = 2e-4

    def __post_init__(self):
        if self.n0 <= 0:
            raise PhyError(f"noise density must be positive, got {self.n0}")
        if self.alpha <= 0:
            raise PhyError(f"path-loss exponent must be positive, got {self.alpha}")
        if self.gain <= 0:
            raise PhyError(f"antenna gain must be positive, got {self.gain}")
        if self.e_max <= 0:
            raise PhyError(f"peak symbol energy must be positive, got {self.e_max}")


def db_to_linear(value_db):
    return 10.0 ** (value_db / 10.0)


def per_rayleigh(e_t, mcs, chan, r):
    """Average PER of an uncoded packet over a flat Rayleigh fading hop.

    Depends on energy, distance, noise, and gain only through the
    received-SNR ratio e_t*gain / (n0 * r^alpha).  The closed form is an
    approximation and is clamped to [0, 1].
    """
    if e_t <= 0:
        raise PhyError(f"symbol energy must be positive, got {e_t}")
    if r < 0:
        raise PhyError(f"hop distance must be non-negative, got {r}")
    noise = chan.n0 * r ** chan.alpha
    signal = e_t * chan.gain
    ratio = noise / signal
    fading = (mcs.a_n * noise / (noise + mcs.g_n * signal)
              * math.exp(-mcs.gamma_pn * (mcs.g_n + ratio)))
    outage = 1.0 - math.exp(-mcs.gamma_pn * ratio)
    return min(1.0, max(0.0, fading + outage))


def per_perfect(e_t, mcs, chan, r):
    """Error-free hop; degenerate model used for sanity checks."""
    if e_t <= 0:
        raise PhyError(f"symbol energy must be positive, got {e_t}")
    if r < 0:
        raise PhyError(f"hop distance must be non-negative, got {r}")
    return 0.0


# Models selectable by name in configs.  Tests may register stubs.
PER_MODELS = {
    "rayleigh-uncoded": per_rayleigh,
    "perfect": per_perfect,
}


def per_general(e_t, mcs, chan, r, model="rayleigh-uncoded"):
    """Evaluate the named PER model; output is a probability in [0, 1]."""
    try:
        fn = PER_MODELS[model]
    except KeyError:
        raise PhyError(f"unknown PER model {model!r}; "
                       f"known: {sorted(PER_MODELS)}") from None
    return fn(e_t, mcs, chan, r)
