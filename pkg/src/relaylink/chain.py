"""The 3N-state link chain: build, solve, and summarize.

States are (kind, position) with kinds F (first transmission of a new
packet), R (source retransmitting, relay has not decoded), and B (relay
decoded, both source and relay transmitting).  A delivery is the B->F
transition; throughput is the stationary mass on F-states.
"""

from dataclasses import dataclass

import numpy as np

from . import mobility, phy
from ._linalg import stationary_distribution

KINDS = ("F", "R", "B")


class ChainError(ValueError):
    """Invalid chain configuration or degenerate solve."""


@dataclass(frozen=True)
class LinkConfig:
    """Everything needed to build the link chain for one operating point."""

    geom: object
    walk: mobility.WalkKernel
    mcs_s: phy.McsParams
    mcs_r: phy.McsParams
    chan: phy.ChannelParams
    e_s: float
    e_r: float
    per_model: str = "rayleigh-uncoded"

    def __post_init__(self):
        for name, e in (("e_s", self.e_s), ("e_r", self.e_r)):
            if not (0 < e <= self.chan.e_max):
                raise ChainError(
                    f"{name}={e} outside (0, e_max={self.chan.e_max}]")
        if self.walk.n_positions != self.geom.n_positions:
            raise ChainError("walk kernel size does not match geometry")

    @property
    def n_positions(self):
        return self.geom.n_positions

    def per_source(self, position):
        """PER of the source->relay hop with the relay at `position`."""
        d_s, _ = self.geom.hop_distances(position)
        return phy.per_general(self.e_s, self.mcs_s, self.chan, d_s,
                               model=self.per_model)

    def per_relay(self, position):
        """PER of the relay->destination hop with the relay at `position`."""
        _, d_r = self.geom.hop_distances(position)
        return phy.per_general(self.e_r, self.mcs_r, self.chan, d_r,
                               model=self.per_model)


@dataclass(frozen=True)
class ChainMatrix:
    """Row-stochastic transition matrix with a (kind, position) index map.

    Flat index = kind_index * N + (position - 1), so each kind-to-kind
    block is a contiguous N-by-N submatrix.
    """

    m: np.ndarray
    kinds: tuple
    n_positions: int

    def index(self, kind, position):
        return self.kinds.index(kind) * self.n_positions + (position - 1)

    def block(self, src_kind, dst_kind):
        """View of the src-kind -> dst-kind N-by-N block."""
        n = self.n_positions
        i = self.kinds.index(src_kind) * n
        j = self.kinds.index(dst_kind) * n
        return self.m[i:i + n, j:j + n]

    def kind_mass(self, pi, kind):
        n = self.n_positions
        i = self.kinds.index(kind) * n
        return float(np.sum(pi[i:i + n]))


@dataclass(frozen=True)
class SteadyMetrics:
    """Stationary summary: throughput, delay, and per-packet energies."""

    pi: np.ndarray | None
    pi0: float
    tau: float
    e_total: float
    e_total_relay: float


def build_chain(cfg):
    """Assemble the 3N-state transition matrix.

    Decode probabilities use the relay position at the start of the slot;
    the position then advances independently by the s-step walk kernel.
    """
    n = cfg.n_positions
    ps = mobility.step_kernel(cfg.walk)
    per_s = np.array([cfg.per_source(i) for i in range(1, n + 1)])
    per_r = np.array([cfg.per_relay(i) for i in range(1, n + 1)])
    return _assemble(per_s, per_r, ps)


def _assemble(per_s, per_r, ps):
    n = ps.shape[0]
    m = np.zeros((3 * n, 3 * n))
    f, r, b = 0, n, 2 * n
    m[f:r, r:b] = per_s[:, None] * ps
    m[f:r, b:] = (1.0 - per_s)[:, None] * ps
    m[r:b, r:b] = per_s[:, None] * ps
    m[r:b, b:] = (1.0 - per_s)[:, None] * ps
    m[b:, b:] = per_r[:, None] * ps
    m[b:, f:r] = (1.0 - per_r)[:, None] * ps
    return ChainMatrix(m=m, kinds=KINDS, n_positions=n)


def solve_stationary(chain):
    """Stationary vector pi with pi @ M = pi; transient states get mass 0."""
    return stationary_distribution(chain.m)


def metrics(cfg, pi, chain=None):
    """Throughput, delay, and per-packet energy from a stationary vector.

    The relay transmits only in B-states, hence the auxiliary relay
    energy weights E_r by the B-mass per delivered packet.
    """
    if chain is None:
        chain = build_chain(cfg)
    pi0 = chain.kind_mass(pi, "F")
    if pi0 <= 0.0:
        raise ChainError("zero throughput: delivery states unreachable")
    mass_b = chain.kind_mass(pi, "B")
    length = cfg.mcs_s.length
    return SteadyMetrics(
        pi=pi,
        pi0=pi0,
        tau=1.0 / pi0,
        e_total=cfg.e_s * length / pi0,
        e_total_relay=cfg.e_r * length * mass_b / pi0,
    )


def steady_metrics(cfg):
    """Build, solve, and summarize in one step."""
    chain = build_chain(cfg)
    pi = solve_stationary(chain)
    return metrics(cfg, pi, chain=chain)


def stationary_relay_metrics(cfg, position):
    """Metrics with the relay frozen at one position (3-state chain).

    A position where either hop always fails is a legitimate degenerate
    operating point for a frozen relay: delay and per-packet energy are
    infinite there rather than an error.
    """
    per_s = np.array([cfg.per_source(position)])
    per_r = np.array([cfg.per_relay(position)])
    if per_s[0] >= 1.0 or per_r[0] >= 1.0:
        return SteadyMetrics(pi=None, pi0=0.0, tau=float("inf"),
                             e_total=float("inf"),
                             e_total_relay=float("inf"))
    chain = _assemble(per_s, per_r, np.eye(1))
    pi = stationary_distribution(chain.m)
    pi0 = chain.kind_mass(pi, "F")
    mass_b = chain.kind_mass(pi, "B")
    length = cfg.mcs_s.length
    return SteadyMetrics(
        pi=pi,
        pi0=pi0,
        tau=1.0 / pi0,
        e_total=cfg.e_s * length / pi0,
        e_total_relay=cfg.e_r * length * mass_b / pi0,
    )


def random_stationary_metrics(cfg):
    """Relay frozen at a random position drawn from the walk's occupancy.

    Energies average linearly over positions; delay is the weighted mean
    delay, and throughput its reciprocal.  Averaging convention is a
    deliberate model choice isolated to this function.
    """
    mu = mobility.walk_stationary(cfg.walk)
    per_position = [stationary_relay_metrics(cfg, i)
                    for i in range(1, cfg.n_positions + 1)]
    tau = float(sum(w * m.tau for w, m in zip(mu, per_position)))
    e_total = float(sum(w * m.e_total for w, m in zip(mu, per_position)))
    e_relay = float(sum(w * m.e_total_relay for w, m in zip(mu, per_position)))
    return SteadyMetrics(pi=None, pi0=1.0 / tau, tau=tau,
                         e_total=e_total, e_total_relay=e_relay)
