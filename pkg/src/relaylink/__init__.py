"""Energy-throughput analysis of a two-hop wireless link with a mobile relay.

Submodules: mobility (relay random walks), phy (packet error rate),
chain (the 3N-state link chain), protocols (time sharing and sleep
mode), multirelay (delay distribution and parallel links), simulator
(slot-level Monte Carlo oracle), scenarios/cli (sweeps, CSV, figures).
"""

from .chain import LinkConfig, SteadyMetrics, steady_metrics
from .mobility import Geometry1D, Geometry2D, WalkKernel, build_walk_1d, build_walk_2d
from .multirelay import DelayDistribution, delay_distribution, expected_delay
from .phy import ChannelParams, McsParams, per_general, per_rayleigh
from .protocols import SleepConfig, TimeShareConfig, sleep_steady, timeshare_steady
from .simulator import SimConfig, simulate

__all__ = [
    "ChannelParams", "DelayDistribution", "Geometry1D", "Geometry2D",
    "LinkConfig", "McsParams", "SimConfig", "SleepConfig", "SteadyMetrics",
    "TimeShareConfig", "WalkKernel", "build_walk_1d", "build_walk_2d",
    "delay_distribution", "expected_delay", "per_general", "per_rayleigh",
    "simulate", "sleep_steady", "steady_metrics", "timeshare_steady",
]

__version__ = "0.1.0"
