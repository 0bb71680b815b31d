"""Solvers for the three protection radii of the uplink-reuse system.

* g_d: minimum spacing between a D2D receiver and any other transmitting
  device, from the worst-case first ring of interferers.
* k:   slope of the CUE exclusion radius, g_c = k * d_cb.
* g_b: minimum BS-to-transmitter spacing keeping the accumulated D2D
  interference at the BS below its SIR threshold, found numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import hexpack
from .propagation import (
    CellConfig,
    RadioConfig,
    noise_power,
    path_loss,
    shannon_sir_threshold,
)

__all__ = [
    "NoiseLimited",
    "NonConvergent",
    "Infeasible",
    "GuardDistances",
    "pair_guard_for_neighbors",
    "solve_gd",
    "compute_k",
    "compute_gc",
    "solve_gb",
    "guard_distances",
    "guard_report",
]


class NoiseLimited(ArithmeticError):
    """The target bit rate is unreachable at d_max even without interference."""


class NonConvergent(RuntimeError):
    """The coupled neighbour-count / guard-distance iteration found no fixed point."""


class Infeasible(RuntimeError):
    """No BS guard radius admits any D2D pair under the BS SIR constraint."""


@dataclass(frozen=True)
class GuardDistances:
    """Solved guard radii plus the derived disk and ring dimensions (m)."""

    g_d: float
    k: float
    g_b: float
    n_s: int
    r_e_min: float
    r_e_max: float
    r_in: float
    r_out: float


def _rate_sir(cfg: RadioConfig) -> float:
    """Linear SIR the configured bit rate requires in the configured bandwidth."""
    return shannon_sir_threshold(cfg.bitrate_bps, cfg.bandwidth_hz)


def pair_guard_for_neighbors(cfg: RadioConfig, cell: CellConfig, n_s: int) -> float:
    """Closed-form pair guard distance given n_s first-ring interferers.

    Solves the worst-case rate equation (victim link at d_max, n_s equal
    interferers at the guard distance) for that distance:

        g_d = d_max * (beta' n_s P_d gamma / (beta' P_d - N W d_max^a' gamma))^(1/a')

    with gamma = 2^(R_b/W) - 1 and (a', beta') the device-link path-loss
    parameters.  n_s = 0 yields 0.  Raises NoiseLimited when the
    denominator is non-positive (rate unreachable even interference-free).
    """
    if n_s < 0:
        raise ValueError("neighbour count must be non-negative")
    gamma = _rate_sir(cfg)
    alpha = cfg.pl_due.exponent
    beta = cfg.pl_due.beta
    denom = beta * cfg.p_due_mw - noise_power(cfg) * cell.d_max_m**alpha * gamma
    if denom <= 0.0:
        snr_edge = beta * cfg.p_due_mw / (noise_power(cfg) * cell.d_max_m**alpha)
        raise NoiseLimited(
            f"bit rate {cfg.bitrate_bps:g} bit/s needs SIR {gamma:.4g} but the "
            f"noise-limited SNR at d_max = {cell.d_max_m:g} m is only {snr_edge:.4g} "
            f"(noise_mode={cfg.noise_mode!r}); no guard distance can help"
        )
    numer = beta * n_s * cfg.p_due_mw * gamma
    return cell.d_max_m * (numer / denom) ** (1.0 / alpha)


def solve_gd(cfg: RadioConfig, cell: CellConfig, max_iter: int = 64) -> tuple[float, int]:
    """Fixed point of the coupled pair-guard / neighbour-count system.

    Starting from n_s = 6 (the equal-disk kissing number), alternate the
    closed-form guard distance for n_s with the neighbour count implied by
    that distance until n_s repeats.  A cycle through previously seen
    counts is resolved conservatively by taking its largest member (larger
    n_s means a longer guard distance).  Raises NonConvergent after
    `max_iter` alternations, NoiseLimited if the rate is unreachable.
    """
    g_d, n_s, _ = _solve_gd_trace(cfg, cell, max_iter)
    return g_d, n_s


def _solve_gd_trace(
    cfg: RadioConfig, cell: CellConfig, max_iter: int = 64
) -> tuple[float, int, int]:
    def neighbors_for(g_d: float) -> int:
        r_e_min = (g_d + cell.d_min_m) / 2.0
        r_e_max = (g_d + cell.d_max_m) / 2.0
        return hexpack.first_layer_neighbors(g_d, r_e_min, r_e_max)

    n_s = 6
    seen: list[int] = []
    for iteration in range(1, max_iter + 1):
        g_d = pair_guard_for_neighbors(cfg, cell, n_s)
        n_next = neighbors_for(g_d)
        if n_next == n_s:
            return g_d, n_s, iteration
        if n_next in seen:
            n_s = max(n_s, n_next)
            g_d = pair_guard_for_neighbors(cfg, cell, n_s)
            return g_d, n_s, iteration
        seen.append(n_s)
        n_s = n_next
    raise NonConvergent(
        f"no neighbour-count fixed point within {max_iter} iterations (last n_s={n_s})"
    )


def compute_k(cfg: RadioConfig, cell: CellConfig) -> float:
    """Slope of the CUE exclusion radius: g_c = k * d_cb.

    k = (d_max / r_cell) * (sir_due * p_cue_max / p_due)^(1/alpha), using
    the device-link exponent (the small exponent difference between the
    two links is neglected, which is what makes g_c linear in d_cb).
    """
    alpha = cfg.pl_due.exponent
    return (cell.d_max_m / cell.r_cell_m) * (
        cfg.sir_due * cfg.p_cue_max_mw / cfg.p_due_mw
    ) ** (1.0 / alpha)


def compute_gc(k: float, d_cb: float) -> float:
    """CUE exclusion radius at CUE-BS distance d_cb."""
    if d_cb < 0.0:
        raise ValueError("CUE distance must be non-negative")
    return k * d_cb


def solve_gb(cfg: RadioConfig, cell: CellConfig, g_d: float, tol: float = 1e-3) -> float:
    """Smallest BS guard radius satisfying the BS SIR constraint.

    For a candidate g_b the hexagonal layout of minimum-size exclusion
    disks is built and its accumulated interference I(g_b) compared with
    the cap P_r,CB / sir_bs.  The feasibility boundary is located by
    bisection on [g_d / 2, r_cell] to absolute tolerance `tol`; the lower
    end keeps the deployable ring's inner radius non-negative and is
    returned directly when feasible everywhere.  Raises Infeasible when
    only configurations with zero admissible pairs satisfy the constraint.
    """
    r_e_min = (g_d + cell.d_min_m) / 2.0
    cap = cfg.p_cue_max_mw * path_loss(cfg.pl_bs, cell.r_cell_m) / cfg.sir_bs

    def layout(g_b: float) -> hexpack.PackingLayout:
        hexes = hexpack.hex_radii(g_b, cell.r_cell_m)
        return hexpack.build_layout(hexes, cell.d_min_m, r_e_min)

    def feasible(g_b: float) -> bool:
        interference = hexpack.bs_interference(
            layout(g_b), cfg.p_due_mw, cfg.pl_bs, r_e_min
        )
        return interference <= cap

    lo = g_d / 2.0
    hi = cell.r_cell_m
    if lo > hi:
        raise Infeasible(
            f"pair guard distance {g_d:.3f} m exceeds the cell diameter budget; "
            "no BS guard radius leaves room for the deployable ring"
        )
    if feasible(lo):
        return lo
    a, b = lo, hi
    while b - a > tol:
        mid = 0.5 * (a + b)
        if feasible(mid):
            b = mid
        else:
            a = mid
    if hexpack.total_pairs(layout(b)) == 0:
        raise Infeasible(
            "the BS SIR constraint is met only where the ring holds no pair "
            f"(boundary guard radius {b:.3f} m of cell radius {cell.r_cell_m:g} m)"
        )
    return b


def guard_distances(cfg: RadioConfig, cell: CellConfig) -> GuardDistances:
    """Solve all three guard radii and derive the disk/ring dimensions."""
    g_d, n_s = solve_gd(cfg, cell)
    k = compute_k(cfg, cell)
    g_b = solve_gb(cfg, cell, g_d)
    return GuardDistances(
        g_d=g_d,
        k=k,
        g_b=g_b,
        n_s=n_s,
        r_e_min=(g_d + cell.d_min_m) / 2.0,
        r_e_max=(g_d + cell.d_max_m) / 2.0,
        r_in=g_b - g_d / 2.0,
        r_out=cell.r_cell_m + g_d / 2.0,
    )


def guard_report(cfg: RadioConfig, cell: CellConfig) -> dict:
    """Guard solution plus solver metadata, as one flat record."""
    g_d, n_s, iterations = _solve_gd_trace(cfg, cell)
    k = compute_k(cfg, cell)
    g_b = solve_gb(cfg, cell, g_d)
    return {
        "g_d_m": g_d,
        "k": k,
        "g_b_m": g_b,
        "n_s": n_s,
        "r_e_min_m": (g_d + cell.d_min_m) / 2.0,
        "r_e_max_m": (g_d + cell.d_max_m) / 2.0,
        "r_in_m": g_b - g_d / 2.0,
        "r_out_m": cell.r_cell_m + g_d / 2.0,
        "gd_iterations": iterations,
        "noise_mode": cfg.noise_mode,
        "sir_due": cfg.sir_due,
        "sir_bs": cfg.sir_bs,
    }
