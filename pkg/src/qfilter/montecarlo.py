"""Seeded Monte Carlo of the prepare-and-measure experiment.

Each trial takes two uniform doubles from a PCG64 stream, in this order:

1. ``u_state`` picks the prepared state ``k`` (the first ``k`` with
   ``u_state < cumsum(priors)[k]``),
2. ``u_outcome`` gives outcome ``mu`` when ``u_outcome < |<mu|psi_k>|^2``,
   and ``nu`` otherwise.

Trial ``t`` therefore consumes raw outputs ``2t`` and ``2t + 1``.  A worker
handling trials ``[start, stop)`` seeds ``PCG64(seed)`` and calls
``advance(2 * start)``, so any partition reproduces the single-stream counts
exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .ensemble import Ensemble
from .solver import Measurement, detection_pair


@dataclass(frozen=True)
class SimConfig:
    trials: int
    seed: int = 0

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True)
class SimResult:
    trials: int
    errors: int
    error_rate: float
    stderr: float
    per_state_counts: tuple[tuple[int, int, int], ...]
    """``(state index, mu count, nu count)`` for every state, 0-based."""

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "errors": self.errors,
            "error_rate": self.error_rate,
            "stderr": self.stderr,
            "per_state_counts": [list(c) for c in self.per_state_counts],
        }


def _cumulative(priors) -> np.ndarray:
    cum = np.cumsum(np.asarray(priors, dtype=float))
    last = int(np.flatnonzero(np.asarray(priors) > 0)[-1])
    cum[last:] = 1.0
    return cum


def _block(seed, start, size, cum, prob):
    bitgen = np.random.PCG64(seed)
    bitgen.advance(2 * start)
    return _backend.tally(bitgen, size, cum, prob)


def simulate(
    ensemble: Ensemble,
    detection: Measurement,
    config: SimConfig,
    workers: int = 1,
) -> SimResult:
    """Run ``config.trials`` preparations and measurements, counting errors.

    ``detection`` is a :class:`~qfilter.solver.DetectionPair` or the trivial
    :class:`~qfilter.solver.GuessMeasurement`.  The result does not depend on
    ``workers``.
    """
    prob = np.ascontiguousarray(detection.outcome_probabilities(ensemble), dtype=float)
    cum = _cumulative(ensemble.priors)
    n = config.trials
    workers = max(1, min(int(workers), n))
    bounds = [n * w // workers for w in range(workers + 1)]
    jobs = [(config.seed, lo, hi - lo, cum, prob) for lo, hi in zip(bounds, bounds[1:])]
    if workers == 1:
        counts = _block(*jobs[0])
    else:
        with ThreadPoolExecutor(workers) as pool:
            counts = sum(pool.map(lambda job: _block(*job), jobs))

    m = ensemble.subset_size
    errors = int(counts[:m, 1].sum() + counts[m:, 0].sum())
    rate = errors / n
    return SimResult(
        trials=n,
        errors=errors,
        error_rate=rate,
        stderr=math.sqrt(rate * (1.0 - rate) / n),
        per_state_counts=tuple((k, int(c[0]), int(c[1])) for k, c in enumerate(counts)),
    )


def estimate_objective(ensemble: Ensemble, phi: float, chi: float, config: SimConfig) -> float:
    """Monte Carlo estimate of the success probability at ``(phi, chi)``."""
    return 1.0 - simulate(ensemble, detection_pair(ensemble, phi, chi), config).error_rate
