"""Monte Carlo placement simulator for concurrent D2D pairs.

Two deployment modes validate the analytical bounds:

* saturation: random sequential packing of pairs (uniform centre in the
  deployable ring, random link distance and orientation) until a run of
  consecutive rejections signals the ring is jammed;
* ppp: a Poisson number of nodes scattered in the cell, greedily matched
  into pairs within the allowed link range, then admitted in random order.

Every accepted pair respects the hard-core rules (inside the cell, clear
of the BS guard disk and of the CUE cut-out) and disjoint exclusion
disks.  Explicit SIR evaluation, with optional transmitter/receiver role
rotation, audits the guard-distance design after the fact.

Trials are pure functions of (config, trial index); each derives its own
random stream, so runs are reproducible and order-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .guard import GuardDistances
from .propagation import CellConfig, RadioConfig, cue_tx_power, path_loss

__all__ = [
    "SIR_CAP",
    "PairPlacement",
    "TrialConfig",
    "TrialResult",
    "MetricStats",
    "make_placement",
    "admissible",
    "run_saturation_trial",
    "run_ppp_trial",
    "run_trial",
    "evaluate_sir",
    "aggregate",
    "verify_placements",
]

#: Reported SIR when a receiver sees no interference at all; keeps the
#: per-trial aggregates finite.
SIR_CAP = 1e12

_CHUNK = 256


@dataclass(frozen=True)
class PairPlacement:
    """One accepted D2D pair: endpoints, link length, and exclusion disk."""

    tx: tuple[float, float]
    rx: tuple[float, float]
    d_d2d: float
    er_center: tuple[float, float]
    er_radius: float


@dataclass(frozen=True)
class TrialConfig:
    """Deterministic description of one simulation trial.

    mode is "saturation" or "ppp" (the latter needs `density` in
    nodes/m^2); d2d_dist is "uniform" over the allowed link range or
    "fixed" at `d_fixed` metres.  The seed, together with a trial index,
    fully determines the trial.
    """

    mode: str = "saturation"
    density: float | None = None
    d2d_dist: str = "uniform"
    d_fixed: float | None = None
    d_cb: float = 0.0
    seed: int = 0
    stop_after_failures: int = 20000

    def __post_init__(self):
        if self.mode not in ("saturation", "ppp"):
            raise ValueError(f"sim.mode must be 'saturation' or 'ppp', got {self.mode!r}")
        if self.mode == "ppp" and not (self.density is not None and self.density > 0.0):
            raise ValueError("sim.density must be > 0 in ppp mode")
        if self.d2d_dist not in ("uniform", "fixed"):
            raise ValueError(
                f"sim.d2d_dist must be 'uniform' or 'fixed', got {self.d2d_dist!r}"
            )
        if self.d2d_dist == "fixed" and self.d_fixed is None:
            raise ValueError("sim.d_fixed is required with d2d_dist='fixed'")
        if self.stop_after_failures < 1:
            raise ValueError("sim.stop_after_failures must be >= 1")


@dataclass(frozen=True)
class TrialResult:
    """Measured outcome of one trial.

    min_due_sir / bs_sir come from the nominal transmitter/receiver
    assignment; rotation_ok records whether the placement still meets both
    SIR thresholds with every pair's roles swapped.
    """

    n_pairs: int
    throughput_bps: float
    min_due_sir: float
    bs_sir: float
    rotation_ok: bool


@dataclass(frozen=True)
class MetricStats:
    """Sample statistics of one metric over a batch of trials."""

    mean: float
    stderr: float
    ci_low: float
    ci_high: float


def make_placement(
    center: tuple[float, float], d_d2d: float, angle: float, g_d: float
) -> PairPlacement:
    """Pair with the given exclusion-disk centre, link length and heading."""
    hx = 0.5 * d_d2d * math.cos(angle)
    hy = 0.5 * d_d2d * math.sin(angle)
    return PairPlacement(
        tx=(center[0] + hx, center[1] + hy),
        rx=(center[0] - hx, center[1] - hy),
        d_d2d=d_d2d,
        er_center=center,
        er_radius=0.5 * (d_d2d + g_d),
    )


def admissible(
    candidate: PairPlacement,
    accepted: Sequence[PairPlacement],
    gd: GuardDistances,
    cell: CellConfig,
    d_cb: float,
) -> bool:
    """Whether `candidate` may join `accepted` under the placement rules.

    (a) its hard core (diameter d_d2d around the disk centre) lies inside
    the cell; (b) the hard core misses the BS guard disk; (c) it misses
    the CUE cut-out of radius k*d_cb at (d_cb, 0); (d) its exclusion disk
    is disjoint from every accepted exclusion disk.  Tangency counts as
    admissible.
    """
    cx, cy = candidate.er_center
    half = 0.5 * candidate.d_d2d
    rho = math.hypot(cx, cy)
    if rho + half > cell.r_cell_m:
        return False
    if rho < gd.g_b + half:
        return False
    if math.hypot(cx - d_cb, cy) < gd.k * d_cb + half:
        return False
    for other in accepted:
        ox, oy = other.er_center
        if math.hypot(cx - ox, cy - oy) < candidate.er_radius + other.er_radius:
            return False
    return True


class _Arena:
    """Mutable accepted-set state with vectorised admissibility checks."""

    def __init__(self, gd: GuardDistances, cell: CellConfig, d_cb: float):
        self.gd = gd
        self.cell = cell
        self.d_cb = d_cb
        self.g_c = gd.k * d_cb
        self.cx: list[float] = []
        self.cy: list[float] = []
        self.radius: list[float] = []
        self.d_d2d: list[float] = []
        self.angle: list[float] = []

    def region_ok(self, cx, cy, d_d2d):
        """Clauses (a)-(c) for a batch of candidates (vectorised)."""
        half = 0.5 * d_d2d
        rho = np.hypot(cx, cy)
        ok = rho + half <= self.cell.r_cell_m
        ok &= rho >= self.gd.g_b + half
        ok &= np.hypot(cx - self.d_cb, cy) >= self.g_c + half
        return ok

    def clears_accepted(self, cx: float, cy: float, er_radius: float) -> bool:
        if not self.cx:
            return True
        dist = np.hypot(np.asarray(self.cx) - cx, np.asarray(self.cy) - cy)
        return bool(np.all(dist >= np.asarray(self.radius) + er_radius))

    def accept(self, cx: float, cy: float, d_d2d: float, angle: float):
        self.cx.append(cx)
        self.cy.append(cy)
        self.radius.append(0.5 * (d_d2d + self.gd.g_d))
        self.d_d2d.append(d_d2d)
        self.angle.append(angle)

    def placements(self) -> list[PairPlacement]:
        return [
            make_placement((x, y), d, a, self.gd.g_d)
            for x, y, d, a in zip(self.cx, self.cy, self.d_d2d, self.angle)
        ]


def _draw_link_lengths(cfg: TrialConfig, cell: CellConfig, rng, n: int):
    if cfg.d2d_dist == "fixed":
        d = float(cfg.d_fixed)
        if not cell.d_min_m <= d <= cell.d_max_m:
            raise ValueError(
                f"sim.d_fixed must lie in [{cell.d_min_m}, {cell.d_max_m}], got {d}"
            )
        return np.full(n, d)
    return rng.uniform(cell.d_min_m, cell.d_max_m, n)


def _finish(
    arena: _Arena, cfg: TrialConfig, radio: RadioConfig, cell: CellConfig
) -> TrialResult:
    placements = arena.placements()
    n = len(placements)
    if n == 0:
        return TrialResult(0, 0.0, SIR_CAP, SIR_CAP, True)
    min_sir, bs_sir = evaluate_sir(placements, radio, cell, cfg.d_cb, rotate=False)
    rot_sir, rot_bs = evaluate_sir(placements, radio, cell, cfg.d_cb, rotate=True)
    return TrialResult(
        n_pairs=n,
        throughput_bps=n * radio.bitrate_bps,
        min_due_sir=min_sir,
        bs_sir=bs_sir,
        rotation_ok=(rot_sir >= radio.sir_due and rot_bs >= radio.sir_bs),
    )


def run_saturation_trial(
    cfg: TrialConfig,
    radio: RadioConfig,
    cell: CellConfig,
    gd: GuardDistances,
    trial_index: int = 0,
) -> TrialResult:
    """Random sequential packing until `stop_after_failures` straight misses.

    Candidate disk centres are drawn area-uniformly in the deployable ring
    [r_in, r_out], link lengths from the configured distribution, headings
    uniformly; a candidate is accepted iff admissible against everything
    accepted so far.  Deterministic given (cfg.seed, trial_index).
    """
    rng = np.random.default_rng([cfg.seed, trial_index])
    arena = _Arena(gd, cell, cfg.d_cb)
    r_in_sq, r_out_sq = gd.r_in**2, gd.r_out**2
    failures = 0
    while failures < cfg.stop_after_failures:
        rho = np.sqrt(rng.random(_CHUNK) * (r_out_sq - r_in_sq) + r_in_sq)
        theta = rng.uniform(0.0, 2.0 * math.pi, _CHUNK)
        cx = rho * np.cos(theta)
        cy = rho * np.sin(theta)
        dd = _draw_link_lengths(cfg, cell, rng, _CHUNK)
        angle = rng.uniform(0.0, 2.0 * math.pi, _CHUNK)
        er = 0.5 * (dd + gd.g_d)
        # admissibility against the pre-chunk state, all candidates at once;
        # disks accepted within this chunk only prune what follows them
        ok = arena.region_ok(cx, cy, dd)
        if arena.cx:
            dist = np.hypot(
                cx[:, None] - np.asarray(arena.cx), cy[:, None] - np.asarray(arena.cy)
            )
            ok &= np.all(dist >= np.asarray(arena.radius) + er[:, None], axis=1)
        for j in range(_CHUNK):
            if ok[j]:
                arena.accept(cx[j], cy[j], dd[j], angle[j])
                failures = 0
                if j + 1 < _CHUNK:
                    tail = np.hypot(cx[j + 1 :] - cx[j], cy[j + 1 :] - cy[j])
                    ok[j + 1 :] &= tail >= er[j + 1 :] + er[j]
            else:
                failures += 1
                if failures >= cfg.stop_after_failures:
                    break
    return _finish(arena, cfg, radio, cell)


def run_ppp_trial(
    cfg: TrialConfig,
    radio: RadioConfig,
    cell: CellConfig,
    gd: GuardDistances,
    trial_index: int = 0,
) -> TrialResult:
    """Poisson node deployment, greedy pairing, random-order admission.

    N ~ Poisson(density * cell area) nodes land uniformly in the cell.
    Feasible node pairs (link length within [d_min, d_max]) are scanned in
    ascending-distance order and matched greedily, each node at most once;
    the matched pairs are then admitted in random order under the same
    placement rules as saturation mode.
    """
    if cfg.mode != "ppp":
        raise ValueError("run_ppp_trial requires a ppp-mode TrialConfig")
    rng = np.random.default_rng([cfg.seed, trial_index])
    arena = _Arena(gd, cell, cfg.d_cb)
    n_nodes = int(rng.poisson(cfg.density * math.pi * cell.r_cell_m**2))
    if n_nodes >= 2:
        rho = cell.r_cell_m * np.sqrt(rng.random(n_nodes))
        theta = rng.uniform(0.0, 2.0 * math.pi, n_nodes)
        px = rho * np.cos(theta)
        py = rho * np.sin(theta)
        dist = np.hypot(px[:, None] - px[None, :], py[:, None] - py[None, :])
        iu, ju = np.triu_indices(n_nodes, k=1)
        feas = (dist[iu, ju] >= cell.d_min_m) & (dist[iu, ju] <= cell.d_max_m)
        order = np.argsort(dist[iu, ju][feas], kind="stable")
        cand_i = iu[feas][order]
        cand_j = ju[feas][order]
        used = np.zeros(n_nodes, dtype=bool)
        matched: list[tuple[int, int]] = []
        for a, b in zip(cand_i, cand_j):
            if not used[a] and not used[b]:
                used[a] = used[b] = True
                matched.append((int(a), int(b)))
        for idx in rng.permutation(len(matched)):
            a, b = matched[idx]
            cx = 0.5 * (px[a] + px[b])
            cy = 0.5 * (py[a] + py[b])
            dd = dist[a, b]
            ok = arena.region_ok(np.asarray(cx), np.asarray(cy), np.asarray(dd))
            if bool(ok) and arena.clears_accepted(cx, cy, 0.5 * (dd + gd.g_d)):
                arena.accept(cx, cy, dd, math.atan2(py[a] - py[b], px[a] - px[b]))
    return _finish(arena, cfg, radio, cell)


def run_trial(
    cfg: TrialConfig,
    radio: RadioConfig,
    cell: CellConfig,
    gd: GuardDistances,
    trial_index: int = 0,
) -> TrialResult:
    """Dispatch on cfg.mode."""
    if cfg.mode == "ppp":
        return run_ppp_trial(cfg, radio, cell, gd, trial_index)
    return run_saturation_trial(cfg, radio, cell, gd, trial_index)


def evaluate_sir(
    accepted: Sequence[PairPlacement],
    radio: RadioConfig,
    cell: CellConfig,
    d_cb: float,
    rotate: bool = False,
) -> tuple[float, float]:
    """Worst receiver SIR across pairs, and the uplink SIR at the BS.

    Each receiver's desired power is p_due * L_D(d_d2d); interference sums
    the other pairs' transmitters through the device-link model plus the
    power-controlled CUE at (d_cb, 0) (absent at d_cb = 0, where power
    control drives its transmit power to zero).  The BS receives the
    controlled uplink power against the sum of all D2D transmitters seen
    through the BS-link model.  rotate=True swaps every pair's roles.
    Interference-free receivers report SIR_CAP.
    """
    if not accepted:
        raise ValueError("evaluate_sir requires at least one placement")
    tx = np.array([p.tx for p in accepted], dtype=float)
    rx = np.array([p.rx for p in accepted], dtype=float)
    if rotate:
        tx, rx = rx, tx
    d_link = np.array([p.d_d2d for p in accepted], dtype=float)
    n = len(accepted)

    desired = radio.p_due_mw * path_loss(radio.pl_due, d_link)
    cross = np.hypot(rx[:, None, 0] - tx[None, :, 0], rx[:, None, 1] - tx[None, :, 1])
    gains = radio.p_due_mw * radio.pl_due.gain(np.where(cross > 0.0, cross, 1.0))
    np.fill_diagonal(gains, 0.0)
    interference = gains.sum(axis=1)
    if d_cb > 0.0:
        p_cue = cue_tx_power(radio, cell, d_cb)
        d_cue = np.hypot(rx[:, 0] - d_cb, rx[:, 1])
        interference = interference + p_cue * path_loss(radio.pl_due, d_cue)
    with np.errstate(divide="ignore"):
        sir = np.where(interference > 0.0, desired / interference, SIR_CAP)
    min_due_sir = float(np.minimum(sir, SIR_CAP).min())

    p_r_cb = radio.p_cue_max_mw * path_loss(radio.pl_bs, cell.r_cell_m)
    bs_interf = float(
        np.sum(radio.p_due_mw * path_loss(radio.pl_bs, np.hypot(tx[:, 0], tx[:, 1])))
    )
    bs_sir = p_r_cb / bs_interf if bs_interf > 0.0 else SIR_CAP
    return min_due_sir, min(bs_sir, SIR_CAP)


def aggregate(results: Sequence[TrialResult]) -> dict[str, MetricStats]:
    """Mean, standard error and 95% interval for each TrialResult metric.

    Single-trial batches get a degenerate interval (stderr 0).  rotation_ok
    is aggregated as a success rate.
    """
    if not results:
        raise ValueError("aggregate requires at least one trial result")
    metrics = {
        "n_pairs": np.array([r.n_pairs for r in results], dtype=float),
        "throughput_bps": np.array([r.throughput_bps for r in results], dtype=float),
        "min_due_sir": np.array([r.min_due_sir for r in results], dtype=float),
        "bs_sir": np.array([r.bs_sir for r in results], dtype=float),
        "rotation_ok": np.array([float(r.rotation_ok) for r in results]),
    }
    out: dict[str, MetricStats] = {}
    for name, values in metrics.items():
        mean = float(values.mean())
        stderr = float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
        out[name] = MetricStats(
            mean=mean,
            stderr=stderr,
            ci_low=mean - 1.96 * stderr,
            ci_high=mean + 1.96 * stderr,
        )
    return out


def verify_placements(
    placements: Sequence[PairPlacement],
    gd: GuardDistances,
    cell: CellConfig,
    d_cb: float,
) -> bool:
    """Post-hoc audit: every placement admissible against all the others."""
    for i, p in enumerate(placements):
        others = [q for j, q in enumerate(placements) if j != i]
        if not admissible(p, others, gd, cell, d_cb):
            return False
    return True
