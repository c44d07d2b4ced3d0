"""Independent checks of the closed-form solver.

Two routes that share nothing with the R/Q formulas:

* :func:`grid_maximize` searches the detection angles directly on a grid, and
  also tries the two trivial measurements that always give the same answer.
  Together these cover every two-outcome projective measurement in the
  plane.
* :func:`helstrom_bound` evaluates the optimum from the trace norm of
  ``w1 rho1 - w2 rho2``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _backend
from .ensemble import NORM_TOL, Ensemble
from .solver import _setup, solve

DEFAULT_STEPS = 400
DEFAULT_REFINEMENTS = 2
SUBDIVISION = 10
#: Half-width of the chi refinement window, as a Bloch-sphere arc in units of h.
CHI_ARC = 4.0


@dataclass(frozen=True, eq=False)
class HermitianMatrix2:
    """2x2 Hermitian matrix with closed-form spectrum."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex).reshape(2, 2)
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise ValueError("matrix is not Hermitian")
        object.__setattr__(self, "entries", m)

    def eigenvalues(self) -> tuple[float, float]:
        """Eigenvalues ``(low, high)`` from trace and determinant."""
        a, d = self.entries[0, 0].real, self.entries[1, 1].real
        half_tr = 0.5 * (a + d)
        radius = math.hypot(0.5 * (a - d), abs(self.entries[0, 1]))
        return half_tr - radius, half_tr + radius

    def trace_norm(self) -> float:
        lo, hi = self.eigenvalues()
        return abs(lo) + abs(hi)


def weighted_operators(ensemble: Ensemble) -> tuple[HermitianMatrix2, HermitianMatrix2]:
    """``(w1 rho1, w2 rho2)``: prior-weighted projector sums of each subset."""
    v = ensemble.vectors
    eta = np.asarray(ensemble.priors)
    proj = eta[:, None, None] * v[:, :, None] * v[:, None, :].conj()
    m = ensemble.subset_size
    return HermitianMatrix2(proj[:m].sum(0)), HermitianMatrix2(proj[m:].sum(0))


def helstrom_bound(ensemble: Ensemble) -> float:
    """Largest success probability allowed by the Helstrom bound."""
    r1, r2 = weighted_operators(ensemble)
    diff = HermitianMatrix2(r1.entries - r2.entries)
    p_err = 0.5 * (1.0 - diff.trace_norm())
    return float(1.0 - p_err)


def grid_maximize(
    ensemble: Ensemble,
    steps: int = DEFAULT_STEPS,
    refinements: int = DEFAULT_REFINEMENTS,
) -> tuple[float, float, float]:
    """Brute-force maximum of the success probability.

    The rank-one measurements are scanned on a ``steps x steps`` grid over
    ``[0, pi)^2``.  Each refinement round then re-grids a window around the
    best point with 21 points per axis: ``±h`` in ``phi``, and in ``chi`` the
    window whose arc on the Bloch sphere is ``±4h``, i.e. ``±4h / |sin 2phi|``
    capped at ``±pi``.  Near ``phi = 0`` or ``pi/2``, ``chi`` barely moves the
    detection state, so a fixed ``±h`` window could miss the right phase.
    ``h`` shrinks tenfold per round.  The trivial measurements (always answer
    subset 1, always answer subset 2) are also compared.

    Returns
    -------
    p_max, phi, chi
        Best probability found, and the angles of the best rank-one point.
    """
    if steps < 8:
        raise ValueError(f"steps must be >= 8, got {steps}")
    _, _, a, b = _setup(ensemble)
    args = (
        np.ascontiguousarray(a.real),
        np.ascontiguousarray(a.imag),
        np.ascontiguousarray(b.real),
        np.ascontiguousarray(b.imag),
        np.asarray(ensemble.priors, dtype=float),
        ensemble.subset_size,
    )
    h = math.pi / steps
    grid = np.arange(steps) * h
    best, i, j = _backend.grid_argmax(*args, grid, grid)
    phi, chi = grid[i], grid[j]

    offsets = np.arange(-SUBDIVISION, SUBDIVISION + 1) / SUBDIVISION
    for _ in range(refinements):
        arc = abs(math.sin(2 * phi))
        half_chi = math.pi if CHI_ARC * h >= math.pi * arc else max(h, CHI_ARC * h / arc)
        phis, chis = phi + h * offsets, chi + half_chi * offsets
        p, i, j = _backend.grid_argmax(*args, phis, chis)
        if p > best:
            best, phi, chi = p, phis[i], chis[j]
        h /= SUBDIVISION

    w1, w2 = ensemble.weights
    return max(best, w1, w2), float(phi), float(chi)


@dataclass(frozen=True)
class OracleReport:
    p_max_grid: float
    phi_grid: float
    chi_grid: float
    p_max_helstrom: float
    p_max_closed: float
    max_abs_gap: float

    def to_dict(self) -> dict:
        return asdict(self)


def cross_check(ensemble: Ensemble, steps: int = DEFAULT_STEPS) -> OracleReport:
    """Run the solver and both oracles on one ensemble."""
    closed = solve(ensemble).p_max
    p_grid, phi, chi = grid_maximize(ensemble, steps)
    p_hel = helstrom_bound(ensemble)
    gap = max(abs(p_grid - closed), abs(p_hel - closed))
    return OracleReport(p_grid, phi, chi, p_hel, closed, gap)
