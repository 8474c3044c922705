"""Event-driven Monte Carlo for annihilating walks with pair immigration.

Particles live on a lattice of spacing ``eps`` covering an outside segment
``[-W_out, 0]`` and an inside segment ``[0, L]``, decoupled by the wall at 0.
Each particle jumps to either neighbor at microscopic rate 1 and annihilates
on collision; every neighboring pair of sites flips jointly at rate
``beta * eps**2`` (pair immigration, mod-2).  Walls either suppress the
crossing jump (reflecting) or remove the particle and count the absorption
(absorbing).  The far boundary at ``-W_out`` always reflects.

Microscopic time runs ``eps**-2`` faster than the macroscopic clock all
observables are quoted in.  The simulation is exact: one exponential clock
with constant total rate, a uniformly chosen channel, and thinning for
channels whose source site is empty.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numba
import numpy as np

from .closed_form import DensityProfile
from .model import (
    Boundary,
    CasimirError,
    ForceResult,
    InvalidParameter,
    Method,
    ModelParams,
    OutOfDomain,
    WrongMode,
    validate,
)

__all__ = [
    "InvalidGeometry",
    "EventOverflow",
    "InsufficientStatistics",
    "SimParams",
    "OccupancyLattice",
    "SimEstimate",
    "simulate",
    "measure_parity",
    "force_estimator",
    "bulk_site_parity",
    "interval_parity_prediction",
]

_SEED_STRIDE = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


class InvalidGeometry(CasimirError):
    """Lattice spacing or outside width cannot be realized on the domain."""


class EventOverflow(CasimirError):
    """A replica exceeded its event budget."""


class InsufficientStatistics(CasimirError):
    """The force estimate has relative error above 50 percent.

    The estimate itself is attached as ``result`` so callers can still
    inspect a value that is merely consistent with zero.
    """

    def __init__(self, message: str, result: ForceResult) -> None:
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class SimParams:
    """Geometry, schedule, and statistics settings for one simulation.

    The lattice spacing is snapped so the inside segment holds an integer
    number of sites (``eps_eff``), and the outside width is snapped to that
    spacing (``w_out_eff``); construction fails if either adjustment moves a
    value by more than 10 percent.  ``t_burn`` defaults to ``10 / (2 beta)``,
    twice the minimum allowed, since the slowest relaxation rate of the
    parity dynamics is ``2 beta``.
    """

    model: ModelParams
    eps: float
    W_out: float
    t_sample: float
    replicas: int
    seed: int
    t_burn: float | None = None
    sample_dt: float = 0.25
    batches: int = 20
    max_events: int = 2_000_000_000
    store_states: bool = True
    eps_eff: float = field(init=False)
    w_out_eff: float = field(init=False)
    n_inside: int = field(init=False)
    n_outside: int = field(init=False)
    n_samples: int = field(init=False)
    t_burn_eff: float = field(init=False)

    def __post_init__(self) -> None:
        validate(self.model)
        for name in ("eps", "W_out", "t_sample", "sample_dt"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidParameter(f"{name} must be a positive finite real")
        if not (isinstance(self.replicas, int) and self.replicas >= 1):
            raise InvalidParameter("replicas must be a positive integer")
        if not isinstance(self.seed, int):
            raise InvalidParameter("seed must be an integer")
        if not (isinstance(self.batches, int) and self.batches >= 20):
            raise InvalidParameter("batch-mean errors need at least 20 batches")
        if not (isinstance(self.max_events, int) and self.max_events >= 1):
            raise InvalidParameter("max_events must be a positive integer")

        n_inside = round(self.model.L / self.eps)
        if n_inside < 4:
            raise InvalidGeometry("inside segment needs at least 4 sites")
        eps_eff = self.model.L / n_inside
        if abs(eps_eff - self.eps) > 0.1 * self.eps:
            raise InvalidGeometry(
                f"eps={self.eps} snaps to {eps_eff}, more than 10 percent away"
            )
        n_outside = round(self.W_out / eps_eff)
        if n_outside < 4:
            raise InvalidGeometry("outside segment needs at least 4 sites")
        w_out_eff = n_outside * eps_eff
        if abs(w_out_eff - self.W_out) > 0.1 * self.W_out:
            raise InvalidGeometry(
                f"W_out={self.W_out} snaps to {w_out_eff}, more than 10 percent away"
            )

        relaxation = 1.0 / (2.0 * self.model.beta)
        t_burn_eff = 10.0 * relaxation if self.t_burn is None else float(self.t_burn)
        if t_burn_eff < 5.0 * relaxation:
            raise InvalidParameter(
                f"t_burn must be at least 5/(2 beta) = {5.0 * relaxation}"
            )

        n_samples = round(self.t_sample / self.sample_dt)
        if n_samples < self.batches or n_samples % self.batches != 0:
            raise InvalidParameter(
                "t_sample / sample_dt must be a multiple of batches"
            )
        if abs(n_samples * self.sample_dt - self.t_sample) > 1e-9 * self.t_sample:
            raise InvalidParameter("sample_dt must divide t_sample evenly")

        object.__setattr__(self, "eps_eff", eps_eff)
        object.__setattr__(self, "w_out_eff", w_out_eff)
        object.__setattr__(self, "n_inside", n_inside)
        object.__setattr__(self, "n_outside", n_outside)
        object.__setattr__(self, "n_samples", n_samples)
        object.__setattr__(self, "t_burn_eff", t_burn_eff)

    @property
    def samples_per_batch(self) -> int:
        return self.n_samples // self.batches

    def site_positions(self) -> np.ndarray:
        """Cell-centered site coordinates, outside segment first."""
        outside = -self.w_out_eff + (np.arange(self.n_outside) + 0.5) * self.eps_eff
        inside = (np.arange(self.n_inside) + 0.5) * self.eps_eff
        return np.concatenate((outside, inside))


@dataclass(frozen=True)
class OccupancyLattice:
    """Occupancy snapshot of both segments at one microscopic time."""

    params: SimParams
    occupancy: np.ndarray
    clock: float

    def __post_init__(self) -> None:
        occupancy = np.asarray(self.occupancy, dtype=np.int8)
        expected = self.params.n_outside + self.params.n_inside
        if occupancy.shape != (expected,):
            raise InvalidParameter(f"occupancy must hold {expected} sites")
        if not np.all((occupancy == 0) | (occupancy == 1)):
            raise InvalidParameter("occupancy values must be 0 or 1")
        if not (math.isfinite(self.clock) and self.clock >= 0.0):
            raise InvalidParameter("clock must be a nonnegative real")
        object.__setattr__(self, "occupancy", occupancy)

    @property
    def outside(self) -> np.ndarray:
        return self.occupancy[: self.params.n_outside]

    @property
    def inside(self) -> np.ndarray:
        return self.occupancy[self.params.n_outside :]


@dataclass(frozen=True)
class SimEstimate:
    """Aggregated measurements plus the raw arrays they came from.

    ``snapshots`` holds the pre-event occupancy at every sample time,
    ``bin_counts`` the per-replica per-batch summed occupancy of each density
    bin, and ``face_counts`` the per-batch absorption tallies for the three
    wall faces (outside of wall 0, inside of wall 0, inside of wall L).
    Standard errors come from batch means pooled over replicas.
    """

    params: SimParams
    density: DensityProfile
    parity_mean: float
    parity_se: float
    force_estimate: ForceResult
    metadata: dict
    snapshots: np.ndarray
    site_positions: np.ndarray
    bin_counts: np.ndarray
    bin_sites: np.ndarray
    n_bins_outside: int
    face_counts: np.ndarray
    final_occupancy: np.ndarray

    def lattice(self, replica: int) -> OccupancyLattice:
        """Final microscopic state of one replica."""
        if not 0 <= replica < self.params.replicas:
            raise InvalidParameter(f"replica must lie in [0, {self.params.replicas})")
        clock = (self.params.t_burn_eff + self.params.t_sample) / self.params.eps_eff**2
        return OccupancyLattice(
            params=self.params,
            occupancy=self.final_occupancy[replica],
            clock=clock,
        )


# ----------------------------------------------------------------- kernel


@numba.njit(cache=True, nogil=True, inline="always")
def _splitmix64(state):
    state = (state + np.uint64(0x9E3779B97F4A7C15)) & np.uint64(0xFFFFFFFFFFFFFFFF)
    z = state
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return state, z


@numba.njit(cache=True, nogil=True, inline="always")
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@numba.njit(cache=True, nogil=True)
def _run_replica(
    n_out,
    n_in,
    absorbing,
    imm_rate,
    t_total,
    t_burn,
    sample_spacing,
    samples_per_batch,
    seed,
    max_events,
    snapshots,
    face_counts,
    counters,
    occupancy,
):
    """Simulate one replica; returns 0 on success, 1 on event overflow.

    All times are microscopic.  The total event rate is constant (empty
    sources make null events), so a single exponential clock and a uniform
    channel draw realize the dynamics exactly.
    """
    # xoshiro256++ state from four splitmix64 outputs
    sm = seed
    sm, s0 = _splitmix64(sm)
    sm, s1 = _splitmix64(sm)
    sm, s2 = _splitmix64(sm)
    sm, s3 = _splitmix64(sm)

    n_sites = n_out + n_in
    pairs_out = n_out - 1
    n_pairs = pairs_out + (n_in - 1)
    n_kill = 3 if absorbing else 0
    jump_rate = 2.0 * n_pairs
    imm_total = imm_rate * n_pairs
    total_rate = jump_rate + imm_total + n_kill

    n_samples = snapshots.shape[0]
    n_batches = face_counts.shape[0]
    batch_span = sample_spacing * samples_per_batch

    t = 0.0
    sample_idx = 0
    events = np.int64(0)
    created = np.int64(0)
    annihilated = np.int64(0)
    absorbed = np.int64(0)
    status = 0

    while True:
        # xoshiro256++ draw for the waiting time
        r = (_rotl((s0 + s3) & np.uint64(0xFFFFFFFFFFFFFFFF), 23) + s0) & np.uint64(
            0xFFFFFFFFFFFFFFFF
        )
        tmp = (s1 << np.uint64(17)) & np.uint64(0xFFFFFFFFFFFFFFFF)
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= tmp
        s3 = _rotl(s3, 45)
        u_wait = (r >> np.uint64(11)) * 1.1102230246251565e-16

        t_next = t - math.log(1.0 - u_wait) / total_rate
        while sample_idx < n_samples and t_burn + (sample_idx + 1) * sample_spacing <= t_next:
            for i in range(n_sites):
                snapshots[sample_idx, i] = occupancy[i]
            sample_idx += 1
        if t_next > t_total:
            break
        events += 1
        if events > max_events:
            status = 1
            break

        r = (_rotl((s0 + s3) & np.uint64(0xFFFFFFFFFFFFFFFF), 23) + s0) & np.uint64(
            0xFFFFFFFFFFFFFFFF
        )
        tmp = (s1 << np.uint64(17)) & np.uint64(0xFFFFFFFFFFFFFFFF)
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= tmp
        s3 = _rotl(s3, 45)
        u_kind = (r >> np.uint64(11)) * 1.1102230246251565e-16

        x = u_kind * total_rate
        if x < jump_rate:
            slot = int(x)
            if slot >= 2 * n_pairs:
                slot = 2 * n_pairs - 1
            pair = slot >> 1
            if pair < pairs_out:
                left = pair
            else:
                left = n_out + (pair - pairs_out)
            right = left + 1
            if slot & 1 == 0:
                source, target = left, right
            else:
                source, target = right, left
            if occupancy[source] == 1:
                occupancy[source] = 0
                if occupancy[target] == 1:
                    occupancy[target] = 0
                    annihilated += 2
                else:
                    occupancy[target] = 1
        elif x < jump_rate + imm_total:
            pair = int((x - jump_rate) / imm_rate)
            if pair >= n_pairs:
                pair = n_pairs - 1
            if pair < pairs_out:
                left = pair
            else:
                left = n_out + (pair - pairs_out)
            right = left + 1
            created += 2
            annihilated += 2 * (occupancy[left] + occupancy[right])
            occupancy[left] ^= 1
            occupancy[right] ^= 1
        else:
            face = int(x - jump_rate - imm_total)
            if face > 2:
                face = 2
            if face == 0:
                site = n_out - 1
            elif face == 1:
                site = n_out
            else:
                site = n_sites - 1
            if occupancy[site] == 1:
                occupancy[site] = 0
                absorbed += 1
                if t_next > t_burn:
                    batch = int((t_next - t_burn) / batch_span)
                    if batch >= n_batches:
                        batch = n_batches - 1
                    face_counts[batch, face] += 1
        t = t_next

    counters[0] = events
    counters[1] = created
    counters[2] = annihilated
    counters[3] = absorbed
    return status


# ------------------------------------------------------------- aggregation


def _thread_count(replicas: int) -> int:
    raw = os.environ.get("CASIMIR_THREADS")
    if raw is None:
        threads = os.cpu_count() or 1
    else:
        try:
            threads = int(raw)
        except ValueError as exc:
            raise InvalidParameter(f"CASIMIR_THREADS must be an integer, got {raw!r}") from exc
        if threads < 1:
            raise InvalidParameter("CASIMIR_THREADS must be a positive integer")
    return max(1, min(threads, replicas))


def _bin_layout(params: SimParams) -> tuple[np.ndarray, np.ndarray, int]:
    """Assign sites to density bins of width max(eps, L/64), per segment.

    Returns the per-site bin index, the per-bin site tally, and the number
    of outside bins.  Bins never straddle the wall at 0.
    """
    width = max(params.eps_eff, params.model.L / 64.0)
    n_bins_out = max(1, round(params.w_out_eff / width))
    n_bins_in = max(1, round(params.model.L / width))
    width_out = params.w_out_eff / n_bins_out
    width_in = params.model.L / n_bins_in
    positions = params.site_positions()
    site_bin = np.empty(positions.size, dtype=np.int64)
    for k in range(params.n_outside):
        index = int((positions[k] + params.w_out_eff) / width_out)
        site_bin[k] = min(index, n_bins_out - 1)
    for k in range(params.n_inside):
        index = int(positions[params.n_outside + k] / width_in)
        site_bin[params.n_outside + k] = n_bins_out + min(index, n_bins_in - 1)
    tally = np.bincount(site_bin, minlength=n_bins_out + n_bins_in)
    return site_bin, tally, n_bins_out


def _density_per_batch(
    params: SimParams, bin_counts: np.ndarray, bin_sites: np.ndarray
) -> np.ndarray:
    """Per-(replica, batch, bin) density from summed occupancies."""
    norm = params.samples_per_batch * bin_sites * params.eps_eff
    return bin_counts / norm


def _force_from_raw(
    params: SimParams,
    bin_counts: np.ndarray,
    bin_sites: np.ndarray,
    n_bins_outside: int,
    face_counts: np.ndarray,
) -> ForceResult:
    mode = params.model.boundary
    if mode is Boundary.REFLECTING:
        n_bins_inside = bin_sites.size - n_bins_outside
        if n_bins_outside < 4 or n_bins_inside < 4:
            raise InvalidParameter("need at least 4 density bins on each wall side")
        rho = _density_per_batch(params, bin_counts, bin_sites)
        # Linear extrapolation to the wall from the two nearest bin centers.
        outside = 0.5 * (3.0 * rho[:, :, n_bins_outside - 1] - rho[:, :, n_bins_outside - 2])
        inside = 0.5 * (3.0 * rho[:, :, n_bins_outside] - rho[:, :, n_bins_outside + 1])
        samples = (outside - inside).ravel()
    else:
        span = params.samples_per_batch * params.sample_dt
        samples = ((face_counts[:, :, 0] - face_counts[:, :, 1]) / span).ravel()
    value = float(np.mean(samples))
    error = float(np.std(samples, ddof=1) / math.sqrt(samples.size))
    result = ForceResult(
        value=value, mode=mode, method=Method.SIMULATION, uncertainty=error
    )
    if error > 0.5 * abs(value):
        raise InsufficientStatistics(
            f"force {value:.3e} has standard error {error:.3e}, above 50 percent",
            result,
        )
    return result


def simulate(params: SimParams) -> SimEstimate:
    """Run all replicas and aggregate densities, parity, and the force.

    Replicas execute in parallel worker threads (``CASIMIR_THREADS``, default
    the available parallelism) on a compiled kernel; every replica draws its
    own random stream from ``(seed, replica index)``, and aggregation runs in
    fixed replica order, so results are bit-identical for any thread count.

    Raises
    ------
    EventOverflow
        If any replica exceeds ``max_events`` event draws.
    """
    if not isinstance(params, SimParams):
        raise InvalidParameter("params must be a SimParams instance")
    if not params.store_states:
        raise InvalidParameter("store_states=False is not supported")
    replicas = params.replicas
    n_sites = params.n_outside + params.n_inside
    eps2 = params.eps_eff**2
    absorbing = params.model.boundary is Boundary.ABSORBING

    snapshots = np.zeros((replicas, params.n_samples, n_sites), dtype=np.int8)
    face_counts = np.zeros((replicas, params.batches, 3), dtype=np.int64)
    counters = np.zeros((replicas, 4), dtype=np.int64)
    final = np.zeros((replicas, n_sites), dtype=np.int8)
    seeds = [(params.seed + r * _SEED_STRIDE) & _MASK64 for r in range(replicas)]

    def run(replica: int) -> int:
        return _run_replica(
            params.n_outside,
            params.n_inside,
            absorbing,
            params.model.beta * eps2,
            (params.t_burn_eff + params.t_sample) / eps2,
            params.t_burn_eff / eps2,
            params.sample_dt / eps2,
            params.samples_per_batch,
            np.uint64(seeds[replica]),
            params.max_events,
            snapshots[replica],
            face_counts[replica],
            counters[replica],
            final[replica],
        )

    threads = _thread_count(replicas)
    if threads == 1:
        statuses = [run(r) for r in range(replicas)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            statuses = list(pool.map(run, range(replicas)))
    for replica, status in enumerate(statuses):
        if status == 1:
            raise EventOverflow(
                f"replica {replica} exceeded max_events={params.max_events}"
            )

    # Exact mod-2 bookkeeping: created - annihilated - absorbed = population.
    population = final.sum(axis=1, dtype=np.int64)
    balance = counters[:, 1] - counters[:, 2] - counters[:, 3]
    if not np.array_equal(balance, population):  # pragma: no cover - defensive
        raise CasimirError("event bookkeeping does not match the final state")

    site_bin, bin_sites, n_bins_outside = _bin_layout(params)
    n_bins = bin_sites.size
    membership = np.zeros((n_sites, n_bins), dtype=np.int64)
    membership[np.arange(n_sites), site_bin] = 1
    flat = snapshots.reshape(replicas * params.n_samples, n_sites).astype(np.int64)
    per_sample = flat @ membership
    bin_counts = (
        per_sample.reshape(replicas, params.batches, params.samples_per_batch, n_bins)
        .sum(axis=2)
    )

    rho_batches = _density_per_batch(params, bin_counts, bin_sites)
    rho = rho_batches.reshape(-1, n_bins).mean(axis=0)
    rho_se = rho_batches.reshape(-1, n_bins).std(axis=0, ddof=1) / math.sqrt(
        replicas * params.batches
    )
    positions = params.site_positions()
    centers = np.bincount(site_bin, weights=positions, minlength=n_bins) / bin_sites
    density = DensityProfile(
        params=params.model,
        x=centers,
        rho=rho,
        method=Method.SIMULATION,
        rho_se=rho_se,
    )

    low_statistics = False
    try:
        force = _force_from_raw(params, bin_counts, bin_sites, n_bins_outside, face_counts)
    except InsufficientStatistics as exc:
        force = exc.result
        low_statistics = True

    # Burn-in adequacy: compare the mean population of the first and second
    # halves of the sampling window (drift z-score, recorded not enforced).
    totals = flat.sum(axis=1).reshape(replicas, params.batches, params.samples_per_batch)
    batch_totals = totals.mean(axis=2).reshape(-1, params.batches)
    half = params.batches // 2
    first = batch_totals[:, :half].ravel()
    second = batch_totals[:, half:].ravel()
    spread = math.sqrt(
        np.var(first, ddof=1) / first.size + np.var(second, ddof=1) / second.size
    )
    drift_z = float((second.mean() - first.mean()) / spread) if spread > 0 else 0.0

    metadata = {
        "seed": params.seed,
        "replica_seeds": seeds,
        "eps_eff": params.eps_eff,
        "w_out_eff": params.w_out_eff,
        "n_inside": params.n_inside,
        "n_outside": params.n_outside,
        "n_samples": params.n_samples,
        "samples_per_batch": params.samples_per_batch,
        "batches": params.batches,
        "sample_dt": params.sample_dt,
        "t_burn": params.t_burn_eff,
        "events": counters[:, 0].tolist(),
        "created": counters[:, 1].tolist(),
        "annihilated": counters[:, 2].tolist(),
        "absorbed": counters[:, 3].tolist(),
        "drift_z": drift_z,
        "force_low_statistics": low_statistics,
    }

    parity_mean, parity_se = _parity_from_raw(
        params, snapshots, positions, (0.0, params.model.L)
    )
    return SimEstimate(
        params=params,
        density=density,
        parity_mean=parity_mean,
        parity_se=parity_se,
        force_estimate=force,
        metadata=metadata,
        snapshots=snapshots,
        site_positions=positions,
        bin_counts=bin_counts,
        bin_sites=bin_sites,
        n_bins_outside=n_bins_outside,
        face_counts=face_counts,
        final_occupancy=final,
    )


def _parity_from_raw(
    params: SimParams,
    snapshots: np.ndarray,
    positions: np.ndarray,
    interval: tuple[float, float],
) -> tuple[float, float]:
    a, b = float(interval[0]), float(interval[1])
    if not (math.isfinite(a) and math.isfinite(b)) or a > b:
        raise OutOfDomain("interval must satisfy a <= b with finite endpoints")
    if a < -params.w_out_eff - 1e-12 or b > params.model.L + 1e-12:
        raise OutOfDomain("interval must lie within the simulated domain")
    mask = (positions > a) & (positions < b)
    counts = snapshots[:, :, mask].sum(axis=2, dtype=np.int64)
    parity = 1.0 - 2.0 * (counts & 1)
    batches = parity.reshape(
        params.replicas, params.batches, params.samples_per_batch
    ).mean(axis=2)
    values = batches.ravel()
    mean = float(values.mean())
    error = float(values.std(ddof=1) / math.sqrt(values.size))
    return mean, error


def measure_parity(
    estimate: SimEstimate, interval: tuple[float, float]
) -> tuple[float, float]:
    """Mean and batch-mean standard error of (-1)^(count in the interval).

    Counts particles at sites whose centers lie strictly inside ``(a, b)``.
    A zero-length interval holds no sites, so its parity is exactly 1.
    """
    return _parity_from_raw(
        estimate.params, estimate.snapshots, estimate.site_positions, interval
    )


def force_estimator(estimate: SimEstimate, mode: Boundary) -> ForceResult:
    """Casimir-force estimate for the wall at 0.

    Reflecting: difference of wall densities, each linearly extrapolated
    from the two bins nearest the wall on its side.  Absorbing: difference
    of the absorption rates per unit macroscopic time at the wall's outside
    and inside faces.

    Raises
    ------
    InsufficientStatistics
        If the standard error exceeds half the estimate's magnitude; the
        estimate is attached to the exception as ``result``.
    """
    if not isinstance(mode, Boundary):
        raise InvalidParameter("mode must be a Boundary value")
    if mode is not estimate.params.model.boundary:
        raise WrongMode(
            f"estimate was simulated with {estimate.params.model.boundary.value}"
        )
    return _force_from_raw(
        estimate.params,
        estimate.bin_counts,
        estimate.bin_sites,
        estimate.n_bins_outside,
        estimate.face_counts,
    )


# ----------------------------------------------------- exact lattice laws


def bulk_site_parity(beta: float, eps: float) -> float:
    """Stationary single-site parity deep in the bulk, exactly.

    The interval-parity recurrence ``w[m-1] + w[m+1] = (2 + 2 b) w[m]`` with
    ``b = beta * eps**2`` has the decaying root ``lam = 1 + b - sqrt(b^2 + 2
    b)``; a single bulk site has parity ``lam``, hence density ``(1 - lam) /
    (2 eps)`` per unit length.
    """
    if not (math.isfinite(beta) and beta > 0 and math.isfinite(eps) and eps > 0):
        raise InvalidParameter("beta and eps must be positive finite reals")
    b = beta * eps * eps
    return 1.0 + b - math.sqrt(b * b + 2.0 * b)


def interval_parity_prediction(beta: float, eps: float, sites: int, total: int) -> float:
    """Exact stationary parity of the first ``sites`` of a reflecting interval.

    ``total`` is the full site count of the interval; both walls pin the
    parity of the complete interval to 1, so the profile is a symmetric
    combination of the recurrence roots.
    """
    if not (isinstance(sites, int) and isinstance(total, int) and 0 <= sites <= total):
        raise InvalidParameter("need integer 0 <= sites <= total")
    lam = bulk_site_parity(beta, eps)
    theta = -math.log(lam)
    return math.cosh((sites - total / 2.0) * theta) / math.cosh(total * theta / 2.0)
