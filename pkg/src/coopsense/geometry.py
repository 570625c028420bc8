"""Spatial layouts (circular rings and square grid) and the path-loss matrix.

All geometry is computed in scaled units: one grid cell is one unit, circular
radii default to emitters on the unit circle with sensor rings at 0.6 and 1.4,
and the path-loss offset K defaults to 1. Working in raw meters would push
every gain to ~1e-6 and condition the downstream recovery problems poorly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PolarPosition:
    """A point in polar coordinates; angle is normalized to [0, 2*pi)."""

    radius: float
    angle: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        object.__setattr__(self, "angle", float(self.angle) % TWO_PI)

    def xy(self) -> tuple[float, float]:
        return (self.radius * math.cos(self.angle), self.radius * math.sin(self.angle))


def pairwise_distance(a: PolarPosition, b: PolarPosition) -> float:
    """Law-of-cosines distance between two polar points (symmetric)."""
    d2 = a.radius**2 + b.radius**2 - 2.0 * a.radius * b.radius * math.cos(a.angle - b.angle)
    return math.sqrt(max(d2, 0.0))


def path_loss_gain(d: float, K: float) -> float:
    """Free-space-like gain 1/(K + d^2); strictly decreasing in d, max 1/K."""
    if K <= 0:
        raise ValueError(f"K must be positive, got {K}")
    if d < 0:
        raise ValueError(f"distance must be >= 0, got {d}")
    return 1.0 / (K + d * d)


@dataclass(frozen=True)
class CircleRing:
    """One sensor ring: radius plus the per-sensor angles in label order.

    Labels within a ring come in diametrically opposite pairs: sensors
    (1, 2), (3, 4), ... of the ring sit at angles (phi, phi + pi).
    """

    radius: float
    angles: np.ndarray  # shape (m,), label order

    @property
    def n_sensors(self) -> int:
        return len(self.angles)


@dataclass(frozen=True)
class CircularLayout:
    """Emitters uniform on a circle; sensors equally spaced on rings.

    Sensor indices are global and 1-based. Ring c (also 1-based) owns the
    contiguous partition of indices ((c-1)*m, c*m] with m = n_sensors/n_circles.
    """

    emitter_radius: float
    emitter_angles: np.ndarray  # shape (n_emitters,)
    rings: tuple[CircleRing, ...]
    partitions: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        m = self.rings[0].n_sensors
        parts = []
        for c in range(len(self.rings)):
            parts.append(tuple(range(c * m + 1, (c + 1) * m + 1)))
        object.__setattr__(self, "partitions", tuple(parts))

    @property
    def n_emitters(self) -> int:
        return len(self.emitter_angles)

    @property
    def n_sensors(self) -> int:
        return sum(r.n_sensors for r in self.rings)

    @property
    def n_circles(self) -> int:
        return len(self.rings)

    def sensor_position(self, index: int) -> PolarPosition:
        """Position of the 1-based global sensor index."""
        ring, local = self.ring_of(index)
        return PolarPosition(self.rings[ring].radius, self.rings[ring].angles[local])

    def emitter_position(self, index: int) -> PolarPosition:
        return PolarPosition(self.emitter_radius, self.emitter_angles[index - 1])

    def ring_of(self, index: int) -> tuple[int, int]:
        """(0-based ring, 0-based local offset) for a 1-based sensor index."""
        if not 1 <= index <= self.n_sensors:
            raise ValueError(f"sensor index {index} out of range 1..{self.n_sensors}")
        m = self.rings[0].n_sensors
        return (index - 1) // m, (index - 1) % m

    def diametric_partner(self, index: int) -> int:
        """The sensor paired with `index`: j <-> j+1 for odd j within a ring."""
        _, local = self.ring_of(index)
        return index + 1 if local % 2 == 0 else index - 1

    def points(self):
        """(index, x, y, kind) rows for all sensors then emitters."""
        rows = []
        for j in range(1, self.n_sensors + 1):
            x, y = self.sensor_position(j).xy()
            rows.append((j, x, y, "sensor"))
        for j in range(1, self.n_emitters + 1):
            x, y = self.emitter_position(j).xy()
            rows.append((j, x, y, "emitter"))
        return rows


@dataclass(frozen=True)
class GridLayout:
    """Square area split into N = rows^2 unit cells, indexed column-wise from 1.

    Each cell holds one potential emitter at its center and one sensor at a
    fixed uniform-random offset inside the cell, drawn once at construction.
    """

    side: float
    n_cells: int
    cell_size: float
    emitter_positions: np.ndarray  # shape (N, 2)
    sensor_positions: np.ndarray  # shape (N, 2)

    @property
    def n_emitters(self) -> int:
        return self.n_cells

    @property
    def n_sensors(self) -> int:
        return self.n_cells

    def points(self):
        rows = []
        for j in range(self.n_cells):
            x, y = self.sensor_positions[j]
            rows.append((j + 1, float(x), float(y), "sensor"))
        for j in range(self.n_cells):
            x, y = self.emitter_positions[j]
            rows.append((j + 1, float(x), float(y), "emitter"))
        return rows


Layout = CircularLayout | GridLayout


@dataclass(frozen=True)
class PathLossMatrix:
    """Gains lambda[m, n] = 1/(K + d(sensor m, emitter n)^2), all in (0, 1/K]."""

    values: np.ndarray  # shape (n_sensors, n_emitters)
    K: float

    @property
    def n_sensors(self) -> int:
        return self.values.shape[0]

    @property
    def n_emitters(self) -> int:
        return self.values.shape[1]

    def rows(self, indices) -> np.ndarray:
        """Sub-matrix of the 1-based sensor indices, in the given order."""
        return self.values[np.asarray(indices, dtype=int) - 1]


def build_circular_layout(
    n_emitters: int,
    n_sensors: int,
    n_circles: int,
    emitter_radius: float,
    radii,
    rng: np.random.Generator,
) -> CircularLayout:
    """Place sensors deterministically on rings and draw emitter angles.

    Sensors on each ring are equally spaced with labels ordered so that
    consecutive (odd, even) pairs are diametrically opposite, which requires
    an even number of sensors per ring.
    """
    radii = tuple(float(r) for r in radii)
    if n_emitters < 1:
        raise ValueError("need at least one emitter")
    if n_sensors < n_emitters:
        raise ValueError(f"need n_sensors >= n_emitters, got {n_sensors} < {n_emitters}")
    if len(radii) != n_circles:
        raise ValueError(f"expected {n_circles} radii, got {len(radii)}")
    if len(set(radii)) != len(radii) or any(r <= 0 for r in radii):
        raise ValueError("sensor radii must be distinct and positive")
    if n_sensors % n_circles != 0:
        raise ValueError(f"n_sensors={n_sensors} not divisible by n_circles={n_circles}")
    m = n_sensors // n_circles
    if m % 2 != 0:
        raise ValueError(f"sensors per circle must be even, got {m}")
    if emitter_radius <= 0:
        raise ValueError("emitter radius must be positive")

    spacing = TWO_PI / m
    angles = np.empty(m)
    for local in range(m):
        pair = local // 2
        angles[local] = pair * spacing + (0.0 if local % 2 == 0 else math.pi)
    angles %= TWO_PI
    rings = tuple(CircleRing(r, angles.copy()) for r in radii)
    emitter_angles = rng.uniform(0.0, TWO_PI, size=n_emitters)
    return CircularLayout(float(emitter_radius), emitter_angles, rings)


def build_grid_layout(n_cells: int, side: float, rng: np.random.Generator) -> GridLayout:
    """Square-grid layout with column-wise 1-based cell indexing.

    Cell i covers column (i-1) // rows and row (i-1) % rows. The emitter sits
    at the cell center; the sensor offset inside each cell is uniform and
    fixed for the layout's lifetime.
    """
    if n_cells < 1:
        raise ValueError("need at least one cell")
    rows = math.isqrt(n_cells)
    if rows * rows != n_cells:
        raise ValueError(f"n_cells={n_cells} is not a perfect square")
    if side <= 0:
        raise ValueError("side must be positive")
    h = side / rows
    idx = np.arange(n_cells)
    col = idx // rows
    row = idx % rows
    corners = np.stack([col * h, row * h], axis=1)
    centers = corners + 0.5 * h
    offsets = rng.random((n_cells, 2))
    sensors = corners + offsets * h
    return GridLayout(float(side), n_cells, h, centers, sensors)


def build_path_loss_matrix(layout: Layout, K: float = 1.0) -> PathLossMatrix:
    """Gain matrix coupling every (sensor, emitter) pair of the layout."""
    if K <= 0:
        raise ValueError(f"K must be positive, got {K}")
    if isinstance(layout, GridLayout):
        diff = layout.sensor_positions[:, None, :] - layout.emitter_positions[None, :, :]
        d2 = (diff**2).sum(axis=2)
    else:
        s_r = np.concatenate([np.full(r.n_sensors, r.radius) for r in layout.rings])
        s_a = np.concatenate([r.angles for r in layout.rings])
        e_r = layout.emitter_radius
        e_a = layout.emitter_angles
        d2 = (
            s_r[:, None] ** 2
            + e_r**2
            - 2.0 * e_r * s_r[:, None] * np.cos(s_a[:, None] - e_a[None, :])
        )
        d2 = np.maximum(d2, 0.0)
    return PathLossMatrix(1.0 / (K + d2), float(K))
