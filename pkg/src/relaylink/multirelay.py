"""Per-packet delay distribution and the multi-relay delivery probability.

The single-link delay eta counts slots from the packet's first
transmission through the slot in which the destination decodes, so the
minimum is 2 (one slot source->relay, one slot relay->destination).
With m independent parallel two-hop links the packet arrives by slot t
with probability 1 - (1 - p(t))^m; for a Poisson relay count with mean
lambda this becomes 1 - exp(-lambda * p(t)).
"""

from dataclasses import dataclass

import numpy as np

from . import mobility
from ._linalg import stationary_distribution
from .chain import build_chain


class MultiRelayError(ValueError):
    """Invalid horizon, relay count, or rate."""


@dataclass(frozen=True)
class DelayDistribution:
    """CDF of the single-link delay on the slot grid 0..t_max."""

    cdf: np.ndarray
    t_max: int

    @property
    def tail_mass(self):
        return 1.0 - float(self.cdf[-1])

    def pmf(self):
        return np.diff(self.cdf, prepend=0.0)

    def mean(self):
        """Truncated mean sum(1 - cdf[t]); a lower bound when tail_mass > 0."""
        return float(np.sum(1.0 - self.cdf[:-1])) if self.t_max > 0 else 0.0


def steady_entry_law(cfg):
    """Relay-position law at the start of a typical packet.

    In steady state a new packet begins in the slot right after a
    delivery, so the relay position is distributed as one walk step past
    the delivering position, weighted by where deliveries happen:
    phi[j] proportional to sum_i pi_B(i) (1 - PER_R(i)) Ps[i, j].
    Starting the first-passage analysis from phi makes its mean equal the
    steady-state delay 1/pi0 exactly.
    """
    n = cfg.n_positions
    chain = build_chain(cfg)
    pi = stationary_distribution(chain.m)
    ps = mobility.step_kernel(cfg.walk)
    success = 1.0 - np.array([cfg.per_relay(i) for i in range(1, n + 1)])
    phi = (pi[2 * n:] * success) @ ps
    total = phi.sum()
    if total <= 0.0:
        raise MultiRelayError("no delivery mass: the link never delivers")
    return phi / total


def delay_distribution(cfg, t_max, start=None):
    """First-passage CDF of the per-packet delay.

    The packet starts in an F-state with the relay positioned by the
    steady-entry law (or an explicit `start` law over positions, e.g.
    `mobility.walk_stationary` for a cold start); mass then flows through
    the transient F/R/B dynamics and is absorbed on each slot's
    successful relay->destination decode.
    """
    if t_max < 2:
        raise MultiRelayError(f"t_max must be >= 2, got {t_max}")
    n = cfg.n_positions
    if start is None:
        start = steady_entry_law(cfg)
    start = np.asarray(start, dtype=float)
    if start.shape != (n,) or abs(start.sum() - 1.0) > 1e-9 or np.any(start < 0):
        raise MultiRelayError("start must be a probability vector over positions")

    chain = build_chain(cfg)
    sub = chain.m.copy()
    b = 2 * n
    absorb = np.zeros(3 * n)
    absorb[b:] = chain.block("B", "F").sum(axis=1)
    sub[b:, :n] = 0.0

    alive = np.zeros(3 * n)
    alive[:n] = start
    cdf = np.zeros(t_max + 1)
    delivered = 0.0
    for t in range(1, t_max + 1):
        delivered += float(alive @ absorb)
        cdf[t] = delivered
        alive = alive @ sub
    return DelayDistribution(cdf=np.minimum(cdf, 1.0), t_max=t_max)


def expected_delay(cfg, start=None):
    """Exact mean of eta via the fundamental matrix of the transient part."""
    n = cfg.n_positions
    if start is None:
        start = steady_entry_law(cfg)
    chain = build_chain(cfg)
    sub = chain.m.copy()
    sub[2 * n:, :n] = 0.0
    alive0 = np.zeros(3 * n)
    alive0[:n] = np.asarray(start, dtype=float)
    # E[eta] = sum_t Pr(eta >= t) = alive0 (I - sub)^-1 1
    visits = np.linalg.solve(np.eye(3 * n) - sub.T, alive0)
    return float(visits.sum())


def min_delay_probability(dist, m):
    """CDF of the minimum delay over m i.i.d. links."""
    if m < 1:
        raise MultiRelayError(f"relay count must be >= 1, got {m}")
    return 1.0 - (1.0 - dist.cdf) ** m


def poisson_min_delay(dist, lam):
    """Delivery-by-t probability with a Poisson(lambda) relay count.

    The empty draw (m = 0) delivers nothing, which is exactly the
    convention under which the closed form 1 - exp(-lambda p) holds.
    """
    if lam <= 0:
        raise MultiRelayError(f"mean relay count must be positive, got {lam}")
    return 1.0 - np.exp(-lam * dist.cdf)
