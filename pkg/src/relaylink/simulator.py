"""Slot-level Monte Carlo oracle for the analytical chains.

Simulates the protocol directly: the relay makes s one-step walk draws
per slot, decodes are Bernoulli draws at the slot-start position, and
the protocol rules (level draw, sleep entry/wake) are applied verbatim.
Identical seeds give identical outcomes.
"""

from dataclasses import dataclass, field

import numpy as np

from . import mobility
from .chain import LinkConfig
from .multirelay import DelayDistribution
from .protocols import SleepConfig, TimeShareConfig

RNG_ALGORITHM = "numpy PCG64"

SCENARIOS = ("single-level", "time-share", "sleep")


class SimulationError(ValueError):
    """Invalid simulation configuration or empty outcome."""


@dataclass(frozen=True)
class SimConfig:
    """One replication: scenario, protocol config, length, and seed."""

    scenario: str
    config: object
    slots: int
    seed: int
    warmup: int = 10_000
    n_batches: int = 40

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise SimulationError(
                f"unknown scenario {self.scenario!r}; known: {SCENARIOS}")
        expected = {"single-level": LinkConfig, "time-share": TimeShareConfig,
                    "sleep": SleepConfig}[self.scenario]
        if not isinstance(self.config, expected):
            raise SimulationError(
                f"scenario {self.scenario!r} needs a {expected.__name__}")
        if not (0 <= self.warmup < self.slots):
            raise SimulationError("need slots > warmup >= 0")
        if self.n_batches < 1:
            raise SimulationError("need at least one batch")


@dataclass(frozen=True)
class SimOutcome:
    """Counts and estimates from one replication, with batch breakdowns."""

    scenario: str
    seed: int
    rng_algorithm: str
    slots: int
    warmup: int
    delivered: int
    delivered_by_level: tuple
    transmit_slots_by_level: tuple
    total_energy: float
    total_relay_energy: float
    delay_counts: dict
    batch_delivered: np.ndarray
    batch_energy: np.ndarray
    batch_delay_sum: np.ndarray

    @property
    def measured_slots(self):
        return self.slots - self.warmup

    @property
    def throughput(self):
        return self.delivered / self.measured_slots

    @property
    def energy_per_packet(self):
        if self.delivered == 0:
            raise SimulationError("no packets delivered")
        return self.total_energy / self.delivered

    @property
    def mean_delay(self):
        if self.delivered == 0:
            raise SimulationError("no packets delivered")
        total = sum(t * c for t, c in self.delay_counts.items())
        return total / self.delivered


def simulate(cfg):
    """Run one replication and tally per-slot energy and deliveries.

    A packet's delay is the gap between consecutive deliveries, which
    equals the first-passage delay for scenarios without sleep and
    additionally counts sleep slots otherwise.  Measurement starts after
    the warmup; energies are integer transmit-slot counts weighted by
    the per-level slot energy at the end, so no rounding leaks.
    """
    scenario, proto = cfg.scenario, cfg.config
    if scenario == "single-level":
        link, q, p_sleep = proto, None, 0.0
        energies = (proto.e_s,)
        relay_energies = (proto.e_r,)
        levels = 1
    elif scenario == "time-share":
        link, q, p_sleep = proto.level_config("low"), proto.q, 0.0
        energies = (proto.e_low, proto.e_high)
        relay_energies = energies
        levels = 2
    else:
        link, q, p_sleep = proto.link, None, proto.p_sleep
        energies = (proto.link.e_s,)
        relay_energies = (proto.link.e_r,)
        levels = 1

    n = link.n_positions
    steps = link.walk.steps_per_slot
    length = link.mcs_s.length
    per_s, per_r = _decode_tables(scenario, proto, link, n, levels)
    walk_cum = [np.cumsum(row).tolist() for row in link.walk.p]

    rng = np.random.default_rng(cfg.seed)
    mu = mobility.walk_stationary(link.walk)
    pos = int(rng.choice(n, p=mu))
    phase = 0  # 0=F, 1=R, 2=B, 3=sleep
    level = 0
    if levels == 2:
        level = 1 if rng.random() < q else 0  # initial packet's level draw

    slots, warmup = cfg.slots, cfg.warmup
    measured = slots - warmup
    n_batches = cfg.n_batches
    walk_u = rng.random(slots * steps).tolist() if steps else []
    decode_u = rng.random(slots).tolist()
    aux_u = rng.random(slots).tolist()
    walk_cum = [row[:-1] + [1.0] for row in walk_cum]  # guard cumsum roundoff

    delivered = 0
    delivered_by_level = [0] * levels
    tx_slots = [[0] * levels for _ in range(n_batches)]
    batch_delivered = np.zeros(n_batches, dtype=np.int64)
    batch_delay_sum = np.zeros(n_batches, dtype=np.int64)
    relay_tx_slots = [0] * levels
    delay_counts = {}
    last_delivery = -1  # true inter-delivery gaps, first packet from slot 0
    wi = 0

    for t in range(slots):
        in_window = t >= warmup
        batch = (t - warmup) * n_batches // measured if in_window else -1
        if phase != 3:
            if in_window:
                tx_slots[batch][level] += 1
            if phase == 2:
                if in_window:
                    relay_tx_slots[level] += 1
                if decode_u[t] >= per_r[level][pos]:
                    # destination decoded: delivery in this slot
                    if in_window:
                        delivered += 1
                        delivered_by_level[level] += 1
                        batch_delivered[batch] += 1
                        delay = t - last_delivery
                        batch_delay_sum[batch] += delay
                        delay_counts[delay] = delay_counts.get(delay, 0) + 1
                    last_delivery = t
                    if p_sleep > 0.0 and aux_u[t] < p_sleep:
                        phase = 3
                    else:
                        phase = 0
                    if levels == 2:
                        level = 1 if aux_u[t] < q else 0
            else:
                phase = 2 if decode_u[t] >= per_s[level][pos] else 1
        else:
            if aux_u[t] >= p_sleep:
                phase = 0
        for _ in range(steps):
            u = walk_u[wi]
            wi += 1
            cum = walk_cum[pos]
            j = 0
            while u > cum[j]:
                j += 1
            pos = j

    total_energy = length * sum(
        e * sum(tx_slots[b][li] for b in range(n_batches))
        for li, e in enumerate(energies))
    total_relay_energy = length * sum(
        e * relay_tx_slots[li] for li, e in enumerate(relay_energies))
    batch_energy = np.array([
        length * sum(e * tx_slots[b][li] for li, e in enumerate(energies))
        for b in range(n_batches)])
    return SimOutcome(
        scenario=scenario, seed=cfg.seed, rng_algorithm=RNG_ALGORITHM,
        slots=slots, warmup=warmup, delivered=delivered,
        delivered_by_level=tuple(delivered_by_level),
        transmit_slots_by_level=tuple(
            sum(tx_slots[b][li] for b in range(n_batches))
            for li in range(levels)),
        total_energy=total_energy, total_relay_energy=total_relay_energy,
        delay_counts=delay_counts,
        batch_delivered=batch_delivered,
        batch_energy=batch_energy,
        batch_delay_sum=batch_delay_sum,
    )


def _decode_tables(scenario, proto, link, n, levels):
    """Per-level, per-position decode failure probabilities."""
    if scenario == "time-share":
        links = [proto.level_config("low"), proto.level_config("high")]
    else:
        links = [link]
    per_s = [[lk.per_source(i) for i in range(1, n + 1)] for lk in links]
    per_r = [[lk.per_relay(i) for i in range(1, n + 1)] for lk in links]
    return per_s, per_r


def delay_histogram(outcome):
    """Empirical delay CDF comparable with the analytical distribution."""
    if outcome.delivered == 0:
        raise SimulationError("no packets delivered")
    t_max = max(outcome.delay_counts)
    cdf = np.zeros(t_max + 1)
    for t, c in outcome.delay_counts.items():
        cdf[t] += c
    cdf = np.cumsum(cdf) / outcome.delivered
    return DelayDistribution(cdf=cdf, t_max=t_max)


def batch_standard_errors(outcome):
    """Batch-means standard errors for throughput, energy/packet, mean delay.

    Per-batch values are ratio estimates; batches with zero deliveries
    are rejected (the run is too short for batch means).
    """
    d = outcome.batch_delivered.astype(float)
    if np.any(d == 0):
        raise SimulationError("a batch delivered zero packets; run longer")
    n_b = len(d)
    slots_per_batch = outcome.measured_slots / n_b
    vals = {
        "throughput": d / slots_per_batch,
        "energy_per_packet": outcome.batch_energy / d,
        "mean_delay": outcome.batch_delay_sum / d,
    }
    return {k: float(np.std(v, ddof=1) / np.sqrt(n_b)) for k, v in vals.items()}
