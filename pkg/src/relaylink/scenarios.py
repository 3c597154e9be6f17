"""Study scenarios: each maps a config to an ordered list of CSV rows.

Rows are plain dicts with a stable column order so the CLI and the
report renderer share one code path.
"""

import numpy as np

from . import chain, config, mobility, multirelay, protocols, simulator


def rows_walk(cfg, what="kernel"):
    """One-step and per-slot kernels, or the stationary position law."""
    walk = config.build_walk(cfg)
    if what == "stationary":
        mu = mobility.walk_stationary(walk)
        return [{"i": i + 1, "mu": mu[i]} for i in range(walk.n_positions)]
    ps = mobility.step_kernel(walk)
    out = []
    for i in range(walk.n_positions):
        for j in range(walk.n_positions):
            out.append({"i": i + 1, "j": j + 1,
                        "p_one_step": walk.p[i, j], "p_slot": ps[i, j]})
    return out


def rows_per(cfg):
    """Hop error rates over the energy sweep at every relay position."""
    link = config.link_config(cfg)
    out = []
    for e_t in config.sweep_grid(cfg):
        point = config.link_config(cfg, e_t=e_t)
        for i in range(1, link.n_positions + 1):
            d_s, d_r = link.geom.hop_distances(i)
            out.append({
                "e_t": e_t, "position": i, "d_s": d_s, "d_r": d_r,
                "per_s": point.per_source(i), "per_r": point.per_relay(i),
            })
    return out


def _metric_row(m):
    return {"pi0": m.pi0, "tau": m.tau, "e_total": m.e_total,
            "e_total_relay": m.e_total_relay}


def rows_steady(cfg):
    """Single operating point of the mobile-relay chain."""
    m = chain.steady_metrics(config.link_config(cfg))
    return [{"e_t": cfg["e_t"], **_metric_row(m)}]


def rows_curve(cfg):
    """Energy-throughput trade-off curves, one per relay speed."""
    out = []
    for s in cfg["s_list"]:
        for e_t in config.sweep_grid(cfg):
            link = config.link_config(cfg, e_t=e_t, steps_per_slot=int(s))
            m = chain.steady_metrics(link)
            out.append({"s": int(s), "e_t": e_t, **_metric_row(m)})
    return out


def rows_stationary_position(cfg):
    """Frozen relay at each position with a fixed symbol energy."""
    link = config.link_config(cfg)
    out = []
    for i in range(1, link.n_positions + 1):
        d_s, d_r = link.geom.hop_distances(i)
        m = chain.stationary_relay_metrics(link, i)
        out.append({"position": i, "d_s": d_s, "d_r": d_r,
                    "e_t": cfg["e_t"], **_metric_row(m)})
    return out


def rows_stationary_sweep(cfg):
    """Energy sweep for the midpoint-frozen and occupancy-weighted relay."""
    midpoint = (config.n_positions(cfg) + 1) // 2
    out = []
    for e_t in config.sweep_grid(cfg):
        link = config.link_config(cfg, e_t=e_t)
        m_mid = chain.stationary_relay_metrics(link, midpoint)
        m_rand = chain.random_stationary_metrics(link)
        out.append({"mode": "midpoint", "e_t": e_t, **_metric_row(m_mid)})
        out.append({"mode": "random", "e_t": e_t, **_metric_row(m_rand)})
    return out


def rows_timeshare(cfg):
    """Time-sharing metrics over a q grid."""
    ts = config.timeshare_config(cfg)
    q_grid = np.linspace(0.0, 1.0, cfg["q_points"])
    out = []
    for q, m in zip(q_grid, protocols.timeshare_curve(ts, q_grid)):
        out.append({
            "q": q, "pi0": m.pi0, "tau": m.tau, "e_total": m.e_total,
            "q_hat": m.q_hat, "tau_low": m.tau_low, "tau_high": m.tau_high,
            "pi_low0": m.pi_low0, "pi_high0": m.pi_high0,
            "pi_low": m.pi_low, "pi_high": m.pi_high,
        })
    return out


def rows_sleep(cfg):
    """Sleep-mode metrics over the configured p_sleep grid."""
    out = []
    for p in cfg["p_sleep_grid"]:
        m = protocols.sleep_steady(config.sleep_config(cfg, p_sleep=p))
        out.append({"p_sleep": p, "e_t": cfg["e_t"], **_metric_row(m)})
    return out


def rows_multirelay(cfg):
    """Single-link delay CDF and the m-relay / Poisson-relay variants."""
    link = config.link_config(cfg)
    dist = multirelay.delay_distribution(link, t_max=cfg["t_max"])
    p_min = multirelay.min_delay_probability(dist, cfg["m_relays"])
    p_poisson = multirelay.poisson_min_delay(dist, cfg["lambda"])
    return [{"t": t, "p_single": dist.cdf[t], "p_min_m": p_min[t],
             "p_poisson": p_poisson[t]}
            for t in range(dist.t_max + 1)]


def _analytical_for(scenario, proto):
    if scenario == "single-level":
        m = chain.steady_metrics(proto)
    elif scenario == "time-share":
        m = protocols.timeshare_steady(proto)
    else:
        m = protocols.sleep_steady(proto)
    return m.pi0, m.tau, m.e_total


def rows_simulate(cfg, seed=None):
    """One Monte Carlo replication next to its analytical counterpart."""
    scenario = cfg["scenario"]
    if scenario == "single-level":
        proto = config.link_config(cfg)
    elif scenario == "time-share":
        proto = config.timeshare_config(cfg)
    else:
        proto = config.sleep_config(cfg)
    sim_cfg = simulator.SimConfig(
        scenario=scenario, config=proto, slots=cfg["slots"],
        warmup=cfg["warmup"], seed=cfg["seed"] if seed is None else int(seed),
        n_batches=cfg["n_batches"])
    outcome = simulator.simulate(sim_cfg)
    se = simulator.batch_standard_errors(outcome)
    pi0, tau, e_total = _analytical_for(scenario, proto)
    return [{
        "scenario": scenario, "seed": outcome.seed,
        "rng": outcome.rng_algorithm,
        "slots": outcome.slots, "warmup": outcome.warmup,
        "delivered": outcome.delivered,
        "throughput_sim": outcome.throughput,
        "throughput_se": se["throughput"],
        "throughput_ana": pi0,
        "energy_sim": outcome.energy_per_packet,
        "energy_se": se["energy_per_packet"],
        "energy_ana": e_total,
        "delay_sim": outcome.mean_delay,
        "delay_se": se["mean_delay"],
        "delay_ana": tau,
    }]
