"""Symmetric three-state families and the filtering vs. identification sweep.

The family is ``|psi_k> = cos(beta)|u1> + exp(2 pi i (k-1)/3) sin(beta)|u2>``
for ``k = 1, 2, 3`` with equal priors and ``0 < beta <= pi/4``.  Telling
``psi_1`` apart from the other two (filtering) roughly halves the error
compared with identifying each state individually.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .ensemble import Ensemble, PureState2D
from .errors import DomainError
from .solver import solve

BETA_MAX = math.pi / 4
#: Agreement demanded between the solver and the closed form in a sweep.
SWEEP_TOL = 1e-10


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 < beta <= BETA_MAX:
        raise DomainError(f"beta must lie in (0, pi/4], got {beta!r}")
    return beta


def make_symmetric(beta: float) -> Ensemble:
    beta = _check_beta(beta)
    c, s = math.cos(beta), math.sin(beta)
    states = tuple(
        PureState2D(c, cmath.exp(2j * math.pi * k / 3) * s) for k in range(3)
    )
    return Ensemble(states, (1 / 3, 1 / 3, 1 / 3), 1)


def make_trine() -> Ensemble:
    h = math.sqrt(3) / 2
    states = (PureState2D(1.0, 0.0), PureState2D(-0.5, -h), PureState2D(-0.5, h))
    return Ensemble(states, (1 / 3, 1 / 3, 1 / 3), 1)


def filter_error(beta: float) -> float:
    """Minimum error for telling ``psi_1`` apart from ``{psi_2, psi_3}``."""
    beta = _check_beta(beta)
    return (3.0 - math.sqrt(1.0 + 3.0 * math.sin(2 * beta) ** 2)) / 6.0


def individual_error(beta: float) -> float:
    """Minimum error for identifying each of the three states."""
    beta = _check_beta(beta)
    return (2.0 - math.sin(2 * beta)) / 3.0


@dataclass(frozen=True)
class SymmetricFamilyPoint:
    beta: float
    p_err_filter: float
    p_err_filter_solver: float
    p_err_individual: float

    @property
    def ratio(self) -> float:
        return self.p_err_filter / self.p_err_individual


def ratio_sweep(beta_min: float, beta_max: float, points: int) -> list[SymmetricFamilyPoint]:
    """Evaluate both error probabilities on a uniform ``beta`` grid.

    Each point also carries the general solver's filtering error, which must
    match the closed form to ``SWEEP_TOL``.
    """
    _check_beta(beta_min)
    _check_beta(beta_max)
    if not beta_min < beta_max:
        raise DomainError(f"need beta_min < beta_max, got {beta_min!r}, {beta_max!r}")
    if points < 2:
        raise DomainError(f"need at least 2 points, got {points}")
    out = []
    for beta in np.linspace(beta_min, beta_max, points):
        beta = min(float(beta), BETA_MAX)
        formula = filter_error(beta)
        solver = solve(make_symmetric(beta)).p_error
        if abs(formula - solver) > SWEEP_TOL:
            raise RuntimeError(
                f"solver and closed form disagree at beta={beta!r}: {solver!r} vs {formula!r}"
            )
        out.append(SymmetricFamilyPoint(beta, formula, solver, individual_error(beta)))
    return out
