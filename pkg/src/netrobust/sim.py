"""Monte Carlo simulation of noisy consensus ``dx = -L_w x dt + dW``.

Trials start from ``x(0) = 0`` and are integrated with Euler-Maruyama in the
kernel backend. Each trial draws from its own generator seeded by
``SeedSequence(seed, spawn_key=(trial,))``, so a trial's path does not depend
on how many other trials run or in what order they finish.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import InvalidParameterError, StabilityError
from .graph import Graph, require_connected
from .spectral import spectrum

DEFAULT_TRIALS = 16
DT_CAP = 0.01
DT_FRACTION = 0.05  # of 1/lambda_max; keeps the integrator's variance bias near 2.5%
BURN_IN_RELAX = 10.0  # in units of 1/lambda_2
WINDOW_RELAX = 200.0
MAX_RECORDS = 1000
_CHUNK_VALUES = 1 << 18


@dataclass(frozen=True)
class SimConfig:
    """Integration parameters. ``None`` fields are filled per graph by :meth:`resolve`.

    Defaults: ``dt = min(0.01, 0.05 / lambda_max)``, ``burn_in = 10 / lambda_2``,
    ``t_final = burn_in + 200 / lambda_2``, ``record_every`` chosen to keep
    about 1000 trajectory samples.
    """

    dt: float | None = None
    t_final: float | None = None
    burn_in: float | None = None
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    record_every: int | None = None
    whole_horizon: bool = False
    noise: float = 1.0

    def __post_init__(self):
        if self.dt is not None and not self.dt > 0:
            raise InvalidParameterError(f"dt must be positive, got {self.dt}")
        if self.t_final is not None and not self.t_final > 0:
            raise InvalidParameterError(f"t_final must be positive, got {self.t_final}")
        if self.burn_in is not None and not self.burn_in >= 0:
            raise InvalidParameterError(f"burn_in must be >= 0, got {self.burn_in}")
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise InvalidParameterError(f"trials must be an integer >= 1, got {self.trials!r}")
        if self.record_every is not None and (not isinstance(self.record_every, int) or self.record_every < 1):
            raise InvalidParameterError(f"record_every must be an integer >= 1, got {self.record_every!r}")
        if not self.noise >= 0:
            raise InvalidParameterError(f"noise amplitude must be >= 0, got {self.noise}")
        if self.burn_in is not None and self.t_final is not None and self.burn_in >= self.t_final:
            raise InvalidParameterError(f"burn_in ({self.burn_in}) must be < t_final ({self.t_final})")

    def resolve(self, lambda_2: float, lambda_max: float) -> SimConfig:
        dt = self.dt if self.dt is not None else min(DT_CAP, DT_FRACTION / lambda_max)
        burn_in = self.burn_in
        t_final = self.t_final
        if burn_in is None:
            burn_in = BURN_IN_RELAX / lambda_2
            if t_final is not None:
                burn_in = min(burn_in, 0.5 * t_final)
        if t_final is None:
            t_final = burn_in + WINDOW_RELAX / lambda_2
        record_every = self.record_every
        if record_every is None:
            record_every = max(1, _num_steps(t_final, dt) // MAX_RECORDS)
        return replace(self, dt=dt, burn_in=burn_in, t_final=t_final, record_every=record_every)


def _num_steps(t_final, dt):
    return max(1, int(round(t_final / dt)))


@dataclass(frozen=True, eq=False)
class SimResult:
    config: SimConfig
    times: np.ndarray
    variance_trajectory: np.ndarray
    trial_trajectories: np.ndarray
    trial_averages: np.ndarray
    time_avg_variance: float
    stderr: float
    window: tuple[float, float]


def _check_stability(dt, lambda_max):
    max_dt = 1.0 / lambda_max
    if dt > max_dt * (1 + 1e-12):
        raise StabilityError(dt, max_dt)


def _run_trial(kern, csr, degree, n, cfg, trial, steps, first_avg):
    indptr, indices, weights = csr
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(trial,)))
    x = np.zeros(n)
    scale = cfg.noise * math.sqrt(cfg.dt)
    every = cfg.record_every
    records = np.zeros(steps // every + 1)
    total = 0.0  # step 0 has zero variance
    chunk = max(1, _CHUNK_VALUES // n)
    var = np.empty(chunk)
    done = 0
    while done < steps:
        m = min(chunk, steps - done)
        noise = rng.standard_normal((m, n))
        kern.em_advance(indptr, indices, weights, degree, x, noise, cfg.dt, scale, var)
        # var[t] is the variance at step done + 1 + t
        lo = max(first_avg - (done + 1), 0)
        if lo < m:
            total += float(np.sum(var[lo:m]))
        start = (-(done + 1)) % every
        idx = np.arange(start, m, every)
        records[(done + 1 + idx) // every] = var[idx]
        done += m
    return total / (steps - first_avg + 1), records


def simulate(g: Graph, cfg: SimConfig | None = None, *, workers=None, backend=None) -> SimResult:
    """Integrate ``cfg.trials`` independent runs on ``g`` and average the population variance.

    ``time_avg_variance`` averages every integration step in the window
    ``[burn_in, t_final]`` (or ``[0, t_final]`` with ``whole_horizon``) over
    all trials; ``stderr`` is the spread of per-trial averages over
    ``sqrt(trials)``. Raises :class:`StabilityError` if ``dt > 1/lambda_max``.
    """
    cfg = SimConfig() if cfg is None else cfg
    require_connected(g)
    spec = spectrum(g)
    cfg = cfg.resolve(spec.algebraic_connectivity, spec.largest)
    _check_stability(cfg.dt, spec.largest)

    steps = _num_steps(cfg.t_final, cfg.dt)
    first_avg = 0 if cfg.whole_horizon else min(math.ceil(cfg.burn_in / cfg.dt - 1e-9), steps)
    kern = _kernels.get(backend)
    indptr, indices, weights = g.csr
    degree = np.zeros(g.n)
    np.add.at(degree, np.repeat(np.arange(g.n), np.diff(indptr)), weights)
    csr = (indptr, indices, weights)

    def one(trial):
        return _run_trial(kern, csr, degree, g.n, cfg, trial, steps, first_avg)

    if workers is None:
        workers = min(cfg.trials, os.cpu_count() or 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, range(cfg.trials)))
    else:
        outcomes = [one(t) for t in range(cfg.trials)]

    trial_avgs = np.array([o[0] for o in outcomes])
    trajectories = np.stack([o[1] for o in outcomes])
    times = np.arange(trajectories.shape[1]) * cfg.record_every * cfg.dt
    stderr = float(np.std(trial_avgs, ddof=1) / math.sqrt(cfg.trials)) if cfg.trials > 1 else float("nan")
    return SimResult(
        config=cfg,
        times=times,
        variance_trajectory=trajectories.mean(axis=0),
        trial_trajectories=trajectories,
        trial_averages=trial_avgs,
        time_avg_variance=float(np.mean(trial_avgs)),
        stderr=stderr,
        window=(first_avg * cfg.dt, steps * cfg.dt),
    )


def estimate_h_star(g: Graph, cfg: SimConfig | None = None, **kwargs) -> tuple[float, float]:
    """Simulated structural vulnerability (unit weights) and its standard error."""
    res = simulate(g.unweighted(), cfg, **kwargs)
    return res.time_avg_variance, res.stderr


def window_mean(result: SimResult, start_frac: float, end_frac: float) -> tuple[float, float]:
    """Mean recorded variance over a fraction of the averaging window, with its
    standard error across trials.
    """
    lo_t, hi_t = result.window
    span = hi_t - lo_t
    t0, t1 = lo_t + start_frac * span, lo_t + end_frac * span
    mask = (result.times >= t0) & (result.times < t1)
    if not mask.any():
        raise InvalidParameterError("no recorded samples in the requested window")
    per_trial = result.trial_trajectories[:, mask].mean(axis=1)
    trials = per_trial.shape[0]
    se = float(np.std(per_trial, ddof=1) / math.sqrt(trials)) if trials > 1 else float("nan")
    return float(per_trial.mean()), se
