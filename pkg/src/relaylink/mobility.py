"""Bounded random walks for the relay position, in 1D and on a 2D grid.

Positions are 1-based in every public interface.  In the 1D geometry the
relay sits on the line between source and destination at one of N evenly
spaced points; in 2D it occupies a cell of an Nx-by-Ny grid while source
and destination are pinned to fixed cells.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import stationary_distribution


class MobilityError(ValueError):
    """Invalid geometry, probability, or position index."""


@dataclass(frozen=True)
class Geometry1D:
    """Collinear layout: N relay positions between endpoints distance d apart."""

    d: float
    n: int

    def __post_init__(self):
        if self.d <= 0:
            raise MobilityError(f"distance d must be positive, got {self.d}")
        if self.n < 1:
            raise MobilityError(f"need at least one relay position, got n={self.n}")

    @property
    def n_positions(self):
        return self.n

    def hop_distances(self, position):
        """Source->relay and relay->destination distances for position i.

        Both hops use the same expression so that the mirror symmetry
        d_r(i) == d_s(n+1-i) holds bitwise, not just to rounding.
        """
        _check_position(position, self.n)
        d_s = position * self.d / (self.n + 1)
        d_r = (self.n + 1 - position) * self.d / (self.n + 1)
        return d_s, d_r


@dataclass(frozen=True)
class Geometry2D:
    """Nx-by-Ny grid with scale delta; source and destination at fixed cells.

    Cell index i in 1..Nx*Ny maps to coordinates
    x_i = ((i-1) mod Nx) + 1, y_i = ceil(i/Nx).
    """

    nx: int
    ny: int
    delta: float
    source: tuple[int, int]
    dest: tuple[int, int]

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise MobilityError(f"grid must be non-empty, got {self.nx}x{self.ny}")
        if self.delta <= 0:
            raise MobilityError(f"grid scale must be positive, got {self.delta}")
        for name, (x, y) in (("source", self.source), ("dest", self.dest)):
            if not (1 <= x <= self.nx and 1 <= y <= self.ny):
                raise MobilityError(f"{name} coordinates {(x, y)} outside grid")

    @property
    def n_positions(self):
        return self.nx * self.ny

    def coords(self, position):
        _check_position(position, self.n_positions)
        x = (position - 1) % self.nx + 1
        y = math.ceil(position / self.nx)
        return x, y

    def hop_distances(self, position):
        x, y = self.coords(position)
        xs, ys = self.source
        xd, yd = self.dest
        d_s = self.delta * math.hypot(x - xs, y - ys)
        d_r = self.delta * math.hypot(x - xd, y - yd)
        return d_s, d_r


@dataclass(frozen=True)
class WalkKernel:
    """One-step position-transition matrix plus the per-slot step count."""

    p: np.ndarray
    p_move: float
    steps_per_slot: int

    def __post_init__(self):
        rows = self.p.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > 1e-12:
            raise MobilityError("walk kernel rows must sum to 1")
        if self.steps_per_slot < 0:
            raise MobilityError("steps per slot must be non-negative")

    @property
    def n_positions(self):
        return self.p.shape[0]


def _check_position(position, n):
    if not (1 <= position <= n):
        raise MobilityError(f"position {position} out of range 1..{n}")


def _check_p_move(p_move):
    if not (0.0 <= p_move <= 1.0):
        raise MobilityError(f"move probability must lie in [0,1], got {p_move}")


def build_walk_1d(geom, p_move, steps_per_slot=1):
    """Symmetric bounded 1D walk: stay with 1-p_move, split p_move over
    the one or two neighbours, full p_move to the single neighbour at the
    boundaries."""
    _check_p_move(p_move)
    n = geom.n_positions
    p = np.zeros((n, n))
    for i in range(n):
        p[i, i] = 1.0 - p_move
        if n == 1:
            p[i, i] = 1.0
            continue
        if i == 0:
            p[i, 1] = p_move
        elif i == n - 1:
            p[i, n - 2] = p_move
        else:
            p[i, i - 1] = p_move / 2.0
            p[i, i + 1] = p_move / 2.0
    return WalkKernel(p=p, p_move=p_move, steps_per_slot=steps_per_slot)


def build_walk_2d(geom, p_move, steps_per_slot=1):
    """Symmetric walk on the grid's 4-neighbourhood.

    The mover splits p_move evenly over its available neighbours: 4 in
    the interior, 3 on an edge, 2 in a corner (1D-degenerate grids have
    at most 2 neighbours per cell).
    """
    _check_p_move(p_move)
    n = geom.n_positions
    p = np.zeros((n, n))
    for i in range(1, n + 1):
        xi, yi = geom.coords(i)
        neighbours = []
        for xj, yj in ((xi - 1, yi), (xi + 1, yi), (xi, yi - 1), (xi, yi + 1)):
            if 1 <= xj <= geom.nx and 1 <= yj <= geom.ny:
                neighbours.append((yj - 1) * geom.nx + xj)
        if not neighbours:
            p[i - 1, i - 1] = 1.0
            continue
        p[i - 1, i - 1] = 1.0 - p_move
        for j in neighbours:
            p[i - 1, j - 1] = p_move / len(neighbours)
    return WalkKernel(p=p, p_move=p_move, steps_per_slot=steps_per_slot)


def step_kernel(walk):
    """s-step kernel P^s (identity for s = 0)."""
    return np.linalg.matrix_power(walk.p, walk.steps_per_slot)


def walk_stationary(walk):
    """Stationary position law of the walk.

    A frozen walk (p_move = 0) is reducible; by convention it gets the
    uniform distribution, matching a relay position "randomly chosen"
    with no occupancy information.
    """
    n = walk.n_positions
    if walk.p_move == 0.0 or n == 1:
        return np.full(n, 1.0 / n)
    return stationary_distribution(walk.p)


def hop_distances(geom, position):
    """Source->relay and relay->destination distances at a relay position."""
    return geom.hop_distances(position)
