"""Render study figures from scenario rows to image files."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_curve(rows, path):
    """Per-packet energy vs throughput, one curve per relay speed."""
    fig, ax = plt.subplots(figsize=(7, 5))
    for s in sorted({r["s"] for r in rows}):
        pts = [r for r in rows if r["s"] == s]
        ax.loglog([r["pi0"] for r in pts], [r["e_total"] for r in pts],
                  marker=".", label=f"s = {s}")
    ax.set_xlabel("throughput $\\pi_0$ (packets/slot)")
    ax.set_ylabel("energy per packet (J)")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    _save(fig, path)


def plot_stationary_position(rows, path):
    """Energy and throughput of a frozen relay vs its position."""
    fig, ax = plt.subplots(figsize=(7, 5))
    positions = [r["position"] for r in rows]
    ax.semilogy(positions, [r["e_total"] for r in rows], marker="o",
                color="tab:blue", label="energy per packet")
    ax.set_xlabel("relay position")
    ax.set_ylabel("energy per packet (J)", color="tab:blue")
    ax2 = ax.twinx()
    ax2.semilogy(positions, [r["pi0"] for r in rows], marker="s",
                 color="tab:orange", label="throughput")
    ax2.set_ylabel("throughput (packets/slot)", color="tab:orange")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def plot_stationary_sweep(rows, path):
    """Energy-throughput curves for midpoint-frozen and random-frozen relays."""
    fig, ax = plt.subplots(figsize=(7, 5))
    for mode in ("midpoint", "random"):
        pts = [r for r in rows if r["mode"] == mode]
        ax.loglog([r["pi0"] for r in pts], [r["e_total"] for r in pts],
                  marker=".", label=f"{mode} stationary relay")
    ax.set_xlabel("throughput $\\pi_0$ (packets/slot)")
    ax.set_ylabel("energy per packet (J)")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    _save(fig, path)


def plot_timeshare(rows, path, baseline=None):
    """Delay-energy curve of the time-sharing scheme; optional single-level
    sweep (`baseline` = rows_curve output) for comparison."""
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.loglog([r["tau"] for r in rows], [r["e_total"] for r in rows],
              marker=".", label="time-sharing (q from 0 to 1)")
    if baseline:
        s_min = min(r["s"] for r in baseline)
        pts = [r for r in baseline if r["s"] == s_min]
        ax.loglog([r["tau"] for r in pts], [r["e_total"] for r in pts],
                  linestyle="--", label=f"single energy level (s = {s_min})")
    ax.set_xlabel("mean packet delay (slots)")
    ax.set_ylabel("energy per packet (J)")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    _save(fig, path)


def plot_timeshare_delays(rows, path):
    """Per-level delays vs the time-sharing probability q."""
    fig, ax = plt.subplots(figsize=(7, 5))
    inner = [r for r in rows if 0.0 < r["q"] < 1.0]
    ax.plot([r["q"] for r in inner], [r["tau_low"] for r in inner],
            marker=".", label="low-level delay")
    ax.plot([r["q"] for r in inner], [r["tau_high"] for r in inner],
            marker=".", label="high-level delay")
    ax.set_xlabel("high-level share q")
    ax.set_ylabel("mean packet delay (slots)")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def plot_sleep(rows, path):
    """Energy and delay of the sleep scheme vs the sleep probability."""
    fig, ax = plt.subplots(figsize=(7, 5))
    ps = [r["p_sleep"] for r in rows]
    ax.plot(ps, [r["e_total"] for r in rows], marker="o",
            color="tab:blue", label="energy per packet")
    ax.set_xlabel("sleep probability")
    ax.set_ylabel("energy per packet (J)", color="tab:blue")
    ax2 = ax.twinx()
    ax2.plot(ps, [r["tau"] for r in rows], marker="s",
             color="tab:orange", label="mean delay")
    ax2.set_ylabel("mean delay (slots)", color="tab:orange")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def plot_multirelay(rows, path):
    """Delivery-by-slot-t probability: one link, m links, Poisson relays."""
    fig, ax = plt.subplots(figsize=(7, 5))
    t = [r["t"] for r in rows]
    ax.plot(t, [r["p_single"] for r in rows], label="single link")
    ax.plot(t, [r["p_min_m"] for r in rows], label="m relays")
    ax.plot(t, [r["p_poisson"] for r in rows], label="Poisson relays")
    ax.set_xlabel("slots t")
    ax.set_ylabel("P(delivered by t)")
    ax.set_ylim(0, 1.02)
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, path)
