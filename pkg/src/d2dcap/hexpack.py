"""Hexagonal layering of exclusion disks in the cell ring.

The ring between the BS guard disk (radius g_b) and the cell edge is
approximated by two concentric hexagons: the inner one circumscribes the
guard disk, the outer one is sized so the six trapezoids between them
match the ring area.  Identical exclusion disks of radius r_e_min are then
laid out on a hexagonal lattice inside one third of that ring, which gives
a closed-form pair count per layer and, via the law of cosines, the exact
centre distances needed to accumulate uplink interference at the BS.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import arc_length
from .propagation import PathLossModel

__all__ = [
    "HexApprox",
    "PackingLayout",
    "hex_radii",
    "layer_count",
    "layer_pairs",
    "build_layout",
    "total_pairs",
    "bs_interference",
    "first_layer_neighbors",
]

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class HexApprox:
    """Side lengths of the inner and outer approximation hexagons (m)."""

    r_h1: float
    r_h2: float


@dataclass(frozen=True)
class PackingLayout:
    """Layered lattice arrangement of exclusion disks in one third of the ring.

    `per_layer` holds, for each layer, the number of disks on the side of
    the radial seed segment that excludes the on-segment disk and on the
    side that includes it.  `kappa` is the BS distance of each layer's
    base centre; within layer i the j-th off-segment disk sits at lattice
    offset 2*j*r_e_min and the k-th on-segment-side disk at
    2*(k-1)*r_e_min, both along a direction 60 degrees off the radial.
    """

    n_layers: int
    per_layer: tuple[tuple[int, int], ...]
    kappa: tuple[float, ...]

    @property
    def n_total(self) -> int:
        """Total disk count over the full ring (three symmetric thirds)."""
        return 3 * sum(a + b for a, b in self.per_layer)


def hex_radii(g_b: float, r_cell: float) -> HexApprox:
    """Hexagon side lengths for guard radius g_b inside a cell of radius r_cell.

    The inner hexagon circumscribes the guard disk (r_h1 = 2 g_b / sqrt(3));
    the outer side solves the area identity
    pi (r_cell^2 - g_b^2) = (3 sqrt(3) / 2) (r_h2^2 - r_h1^2).
    g_b may equal r_cell, in which case the ring is empty (r_h2 = r_h1).
    """
    if not 0.0 <= g_b <= r_cell:
        raise ValueError(f"guard radius must lie in [0, {r_cell}], got {g_b}")
    r_h1 = 2.0 * g_b / _SQRT3
    r_h2 = (math.sqrt(2.0) / 3.0) * math.sqrt(
        _SQRT3 * math.pi * r_cell**2 - (_SQRT3 * math.pi - 6.0) * g_b**2
    )
    return HexApprox(r_h1=r_h1, r_h2=r_h2)


def layer_count(hexes: HexApprox, d_min: float, r_e_min: float) -> int:
    """Number of disk layers that fit between the two hexagons.

    floor((r_h2 - r_h1 - d_min) / (2 r_e_min)) + 1, defined as 0 when the
    gap is narrower than d_min (the construction assumes a wide ring; a
    negative floor argument means no layer fits at all).
    """
    arg = (hexes.r_h2 - hexes.r_h1 - d_min) / (2.0 * r_e_min)
    if arg < 0.0:
        return 0
    return int(math.floor(arg)) + 1


def layer_pairs(i: int, hexes: HexApprox, d_min: float, r_e_min: float) -> tuple[int, int]:
    """Disk counts (excluding-side, including-side) for layer i (1-based).

    The two trapezoid halves meeting at the radial seed segment are counted
    separately: the first count leaves the on-segment disk out, the second
    includes it, which is what prevents double counting at the shared
    boundary.  Counts are clamped at 0 for degenerate inner hexagons.
    """
    n_l = layer_count(hexes, d_min, r_e_min)
    if not 1 <= i <= n_l:
        raise ValueError(f"layer index {i} outside [1, {n_l}]")
    base = hexes.r_h1 + d_min / 2.0
    n_excl = int(math.floor((base + (2 * i - 3) * r_e_min) / (2.0 * r_e_min)))
    n_incl = int(math.floor((base + 2 * (i - 1) * r_e_min) / (2.0 * r_e_min))) + 1
    return max(n_excl, 0), n_incl


def build_layout(hexes: HexApprox, d_min: float, r_e_min: float) -> PackingLayout:
    """Assemble the full layered arrangement for the given hexagon ring."""
    n_l = layer_count(hexes, d_min, r_e_min)
    per_layer = tuple(layer_pairs(i, hexes, d_min, r_e_min) for i in range(1, n_l + 1))
    kappa = tuple(
        hexes.r_h1 + d_min / 2.0 + 2.0 * (i - 1) * r_e_min for i in range(1, n_l + 1)
    )
    return PackingLayout(n_layers=n_l, per_layer=per_layer, kappa=kappa)


def total_pairs(layout: PackingLayout) -> int:
    """Maximum concurrent pairs over the whole ring: 3 * sum of layer counts."""
    return layout.n_total


def bs_interference(
    layout: PackingLayout,
    p_due: float,
    pl_bs: PathLossModel,
    r_e_min: float,
) -> float:
    """Aggregate received power (mW) at the BS from one transmitter per disk.

    Each disk centre stands in for its transmitter.  Within layer i (base
    distance kappa_i) the lattice offsets are kappa_j = 2 j r_e_min on the
    excluding side and kappa_k = 2 (k - 1) r_e_min on the including side;
    the 60-degree lattice direction gives BS distances
    sqrt(kappa_i^2 + kappa^2 - kappa_i * kappa).  The one-third sum is
    tripled for the full ring.
    """
    total = 0.0
    for kappa_i, (n_excl, n_incl) in zip(layout.kappa, layout.per_layer):
        offsets = np.concatenate(
            [
                2.0 * r_e_min * np.arange(1, n_excl + 1, dtype=float),
                2.0 * r_e_min * np.arange(0, n_incl, dtype=float),
            ]
        )
        if offsets.size:
            dist = np.sqrt(kappa_i**2 + offsets**2 - kappa_i * offsets)
            total += float(np.sum(pl_bs.gain(dist)))
    return 3.0 * p_due * total


def first_layer_neighbors(g_d: float, r_e_min: float, r_e_max: float) -> int:
    """How many minimum-size exclusion disks ring a maximum-size one.

    The neighbouring disk centres sit on a circle of radius
    r_e_max + g_d / 2 around the victim receiver; each neighbour claims the
    arc its disk subtends there, so the count is the circumference divided
    by that arc, floored.  Seven equal disks (six neighbours around one)
    is the sanity case.  Raises ValueError when the geometry admits no
    neighbour ring at all (zero or undefined arc).
    """
    if g_d <= 0.0:
        raise ValueError("neighbour count requires a positive guard distance")
    ring_r = r_e_max + g_d / 2.0
    arc = arc_length(ring_r, r_e_min, r_e_min + r_e_max)
    if arc <= 0.0:
        raise ValueError("degenerate neighbour geometry: zero arc length")
    return int(math.floor(2.0 * math.pi * ring_r / arc))
