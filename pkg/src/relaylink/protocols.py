"""Two-energy-level time sharing and sleep mode, as extended link chains.

Time sharing tags every packet with a low or high energy level drawn at
delivery time (probability q for high); the packet keeps its level for
all retransmissions, and the relay forwards at the same level.  Sleep
mode inserts geometrically many idle slots after each delivery while the
relay keeps moving.
"""

from dataclasses import dataclass

import numpy as np

from . import mobility
from ._linalg import stationary_distribution
from .chain import (
    ChainError,
    ChainMatrix,
    LinkConfig,
    SteadyMetrics,
    build_chain,
    steady_metrics,
)

TIMESHARE_KINDS = ("F_low", "R_low", "B_low", "F_high", "R_high", "B_high")
SLEEP_KINDS = ("F", "R", "B", "S")


@dataclass(frozen=True)
class TimeShareConfig:
    """Link parameters with a low/high energy pair and the high-level share q."""

    geom: object
    walk: mobility.WalkKernel
    mcs_s: object
    mcs_r: object
    chan: object
    e_low: float
    e_high: float
    q: float
    per_model: str = "rayleigh-uncoded"

    def __post_init__(self):
        if not (0.0 <= self.q <= 1.0):
            raise ChainError(f"q must lie in [0,1], got {self.q}")
        if not (0 < self.e_low <= self.e_high <= self.chan.e_max):
            raise ChainError(
                f"need 0 < e_low <= e_high <= e_max, got "
                f"e_low={self.e_low}, e_high={self.e_high}, "
                f"e_max={self.chan.e_max}")

    @property
    def n_positions(self):
        return self.geom.n_positions

    def level_config(self, level):
        """Single-level LinkConfig at 'low' or 'high' energy."""
        e = self.e_low if level == "low" else self.e_high
        return LinkConfig(geom=self.geom, walk=self.walk, mcs_s=self.mcs_s,
                          mcs_r=self.mcs_r, chan=self.chan, e_s=e, e_r=e,
                          per_model=self.per_model)


@dataclass(frozen=True)
class TimeShareMetrics:
    """Aggregate masses, per-level delays, and energy of the 6N-state chain.

    Per-level delays are NaN for a level that carries no packets
    (q = 0 or q = 1).
    """

    pi: np.ndarray
    pi0: float
    pi_low0: float
    pi_high0: float
    pi_low: float
    pi_high: float
    tau_low: float
    tau_high: float
    e_total: float
    q_hat: float

    @property
    def tau(self):
        return 1.0 / self.pi0


@dataclass(frozen=True)
class SleepConfig:
    """Base link plus the per-delivery sleep-entry / stay-asleep probability."""

    link: LinkConfig
    p_sleep: float

    def __post_init__(self):
        if not (0.0 <= self.p_sleep < 1.0):
            raise ChainError(f"p_sleep must lie in [0,1), got {self.p_sleep}")

    @property
    def mean_sleep_slots(self):
        return 1.0 / (1.0 - self.p_sleep) - 1.0


def build_timeshare_chain(cfg):
    """Assemble the 6N-state matrix of the two-level scheme.

    Within a level the dynamics are the single-level chain at that
    level's energy; the only cross-level transitions are the delivery
    re-draw: B_level -> F_high with probability q, -> F_low with 1-q.
    """
    n = cfg.n_positions
    ps = mobility.step_kernel(cfg.walk)
    m = np.zeros((6 * n, 6 * n))
    blocks = {}
    for li, level in enumerate(("low", "high")):
        link = cfg.level_config(level)
        per_s = np.array([link.per_source(i) for i in range(1, n + 1)])
        per_r = np.array([link.per_relay(i) for i in range(1, n + 1)])
        f, r, b = 3 * li * n, (3 * li + 1) * n, (3 * li + 2) * n
        m[f:r, r:b] = per_s[:, None] * ps
        m[f:r, b:b + n] = (1.0 - per_s)[:, None] * ps
        m[r:b, r:b] = per_s[:, None] * ps
        m[r:b, b:b + n] = (1.0 - per_s)[:, None] * ps
        m[b:b + n, b:b + n] = per_r[:, None] * ps
        blocks[level] = (b, (1.0 - per_r)[:, None] * ps)
    f_low, f_high = 0, 3 * n
    for level in ("low", "high"):
        b, delivery = blocks[level]
        m[b:b + n, f_low:f_low + n] = (1.0 - cfg.q) * delivery
        m[b:b + n, f_high:f_high + n] = cfg.q * delivery
    return ChainMatrix(m=m, kinds=TIMESHARE_KINDS, n_positions=n)


def timeshare_metrics(cfg, pi, chain=None):
    """Aggregate the 6N-state stationary vector into the level metrics."""
    if chain is None:
        chain = build_timeshare_chain(cfg)
    mass = {k: chain.kind_mass(pi, k) for k in TIMESHARE_KINDS}
    pi_low0 = mass["F_low"]
    pi_high0 = mass["F_high"]
    pi_low = mass["F_low"] + mass["R_low"] + mass["B_low"]
    pi_high = mass["F_high"] + mass["R_high"] + mass["B_high"]
    pi0 = pi_low0 + pi_high0
    if pi0 <= 0.0:
        raise ChainError("zero throughput: delivery states unreachable")
    tau_low = pi_low / pi_low0 if pi_low0 > 0 else float("nan")
    tau_high = pi_high / pi_high0 if pi_high0 > 0 else float("nan")
    length = cfg.mcs_s.length
    e_total = length * (cfg.e_low * pi_low + cfg.e_high * pi_high) / pi0
    return TimeShareMetrics(
        pi=pi, pi0=pi0, pi_low0=pi_low0, pi_high0=pi_high0,
        pi_low=pi_low, pi_high=pi_high,
        tau_low=tau_low, tau_high=tau_high,
        e_total=e_total, q_hat=pi_high0 / pi0,
    )


def timeshare_steady(cfg):
    """Build, solve, and aggregate the time-sharing chain.

    At q = 0 or q = 1 one level is transient and the chain decomposes
    exactly into the single-level chain of the other; solving the
    reduced chain keeps the endpoint metrics bit-identical to the
    single-level ones instead of drowning small masses in roundoff.
    """
    if cfg.q in (0.0, 1.0):
        level = "high" if cfg.q == 1.0 else "low"
        base = steady_metrics(cfg.level_config(level))
        n = cfg.n_positions
        pi = np.zeros(6 * n)
        offset = 3 * n if level == "high" else 0
        pi[offset:offset + 3 * n] = base.pi
        return timeshare_metrics(cfg, pi)
    chain = build_timeshare_chain(cfg)
    pi = stationary_distribution(chain.m)
    return timeshare_metrics(cfg, pi, chain=chain)


def timeshare_curve(cfg, q_grid):
    """Metrics for each q; endpoints reproduce the single-level chains."""
    out = []
    for q in q_grid:
        point = TimeShareConfig(
            geom=cfg.geom, walk=cfg.walk, mcs_s=cfg.mcs_s, mcs_r=cfg.mcs_r,
            chan=cfg.chan, e_low=cfg.e_low, e_high=cfg.e_high, q=float(q),
            per_model=cfg.per_model)
        out.append(timeshare_steady(point))
    return out


def build_sleep_chain(cfg):
    """Add N sleep states to the link chain.

    Delivery routes to a sleep state with probability p_sleep; each
    sleeping slot stays asleep with p_sleep, so the sleep run is
    geometric with mean 1/(1-p_sleep) - 1.  The relay keeps walking
    during sleep; no transmit energy is spent.
    """
    link = cfg.link
    n = link.n_positions
    base = build_chain(link)
    ps = mobility.step_kernel(link.walk)
    p = cfg.p_sleep
    m = np.zeros((4 * n, 4 * n))
    m[:3 * n, :3 * n] = base.m
    f, b, s = 0, 2 * n, 3 * n
    delivery = base.block("B", "F").copy()
    m[b:s, f:f + n] = (1.0 - p) * delivery
    m[b:s, s:] = p * delivery
    m[s:, s:] = p * ps
    m[s:, f:f + n] = (1.0 - p) * ps
    return ChainMatrix(m=m, kinds=SLEEP_KINDS, n_positions=n)


def sleep_metrics(cfg, pi, chain=None):
    """Metrics for the sleep chain; energy counts transmitting slots only."""
    if chain is None:
        chain = build_sleep_chain(cfg)
    pi0 = chain.kind_mass(pi, "F")
    if pi0 <= 0.0:
        raise ChainError("zero throughput: delivery states unreachable")
    active = sum(chain.kind_mass(pi, k) for k in ("F", "R", "B"))
    mass_b = chain.kind_mass(pi, "B")
    link = cfg.link
    length = link.mcs_s.length
    return SteadyMetrics(
        pi=pi,
        pi0=pi0,
        tau=1.0 / pi0,
        e_total=link.e_s * length * active / pi0,
        e_total_relay=link.e_r * length * mass_b / pi0,
    )


def sleep_steady(cfg):
    """Build, solve, and summarize the sleep chain."""
    chain = build_sleep_chain(cfg)
    pi = stationary_distribution(chain.m)
    return sleep_metrics(cfg, pi, chain=chain)
