"""Closed-form minimum-error measurement for subset discrimination.

The measurement is parametrized by the detection state

    |mu> = cos(phi)|psi_1> + exp(i chi) sin(phi)|v>

where ``|v>`` is the unit vector orthogonal to ``|psi_1>`` in the plane of the
states.  Projecting onto ``|mu>`` means "subset 1"; projecting onto the
orthogonal ``|nu>`` means "subset 2".  The success probability is

    P(phi, chi) = 1/2 + R cos(2 phi) + |Q| sin(2 phi) cos(chi - arg Q)

so the best rank-one projector gives ``1/2 + sqrt(R**2 + |Q|**2)``.  When one
subset dominates so strongly that even this loses to always answering that
subset, :func:`solve` reports the always-guess measurement instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .ensemble import (
    NORM_TOL,
    Ensemble,
    PureState2D,
    basis_partner,
    gram,
    plane_coordinates,
)
from .errors import NotRealError, ShapeError

#: |Q| (or sqrt(R^2 + |Q|^2)) below this is treated as exactly zero.
ZERO_TOL = 1e-14
#: The always-guess measurement must win by more than this to be chosen.
GUESS_MARGIN = 1e-13

PROJECTIVE = "projective"
GUESS_1 = "guess-1"
GUESS_2 = "guess-2"


def _plane_basis(ensemble: Ensemble, overlaps: np.ndarray, partner: int):
    psi1 = ensemble.states[0].vector
    v = ensemble.states[partner].vector - overlaps[0, partner] * psi1
    v = v / np.linalg.norm(v)
    return PureState2D(psi1[0], psi1[1]), PureState2D(v[0], v[1])


@dataclass(frozen=True)
class DetectionPair:
    """Orthonormal detection states ``mu`` (subset 1) and ``nu`` (subset 2).

    Build instances with :meth:`from_angles`; ``basis`` holds ``(psi_1, v)``
    in the ensemble's own coordinates.
    """

    phi: float
    chi: float
    mu: PureState2D
    nu: PureState2D
    basis: tuple[PureState2D, PureState2D]

    def __post_init__(self):
        if abs(self.mu.inner(self.nu)) > NORM_TOL:
            raise ValueError("detection states are not orthogonal")
        e1, e2 = self.basis
        expect = math.cos(self.phi) * e1.vector + cmath.exp(1j * self.chi) * math.sin(self.phi) * e2.vector
        if np.max(np.abs(expect - self.mu.vector)) > NORM_TOL:
            raise ValueError("mu does not match its angles")

    @classmethod
    def from_angles(cls, phi: float, chi: float, basis) -> "DetectionPair":
        e1, e2 = (b.vector for b in basis)
        c, s = math.cos(phi), math.sin(phi)
        ph = cmath.exp(1j * chi)
        mu = c * e1 + ph * s * e2
        nu = -ph.conjugate() * s * e1 + c * e2
        return cls(float(phi), float(chi), PureState2D(*mu), PureState2D(*nu), tuple(basis))

    def swapped(self) -> "DetectionPair":
        """Pair with the roles of ``mu`` and ``nu`` exchanged (up to phase)."""
        return DetectionPair.from_angles(self.phi + math.pi / 2, self.chi, self.basis)

    def outcome_probabilities(self, ensemble: Ensemble) -> np.ndarray:
        """``|<mu|psi_k>|^2`` for every ensemble state."""
        amp = ensemble.vectors @ self.mu.vector.conj()
        return amp.real**2 + amp.imag**2


@dataclass(frozen=True)
class GuessMeasurement:
    """The trivial measurement that always answers ``subset`` (1 or 2)."""

    subset: int

    def outcome_probabilities(self, ensemble: Ensemble) -> np.ndarray:
        return np.full(len(ensemble), 1.0 if self.subset == 1 else 0.0)


Measurement = Union[DetectionPair, GuessMeasurement]


@dataclass(frozen=True)
class FilterSolution:
    """Optimal measurement and success probability for one ensemble.

    ``detection`` is always the best rank-one projective measurement.  If
    ``strategy`` is ``"guess-1"`` or ``"guess-2"``, always answering that
    subset does strictly better, and ``p_max`` is that subset's prior
    weight.
    """

    R: float
    Q: complex
    p_max: float
    p_error: float
    detection: DetectionPair
    degenerate: bool = False
    strategy: str = PROJECTIVE

    @property
    def phi_e(self) -> float:
        return self.detection.phi

    @property
    def chi_e(self) -> float:
        return self.detection.chi

    @property
    def p_max_projective(self) -> float:
        return 0.5 + math.hypot(self.R, abs(self.Q))

    @property
    def measurement(self) -> Measurement:
        if self.strategy == GUESS_1:
            return GuessMeasurement(1)
        if self.strategy == GUESS_2:
            return GuessMeasurement(2)
        return self.detection

    def to_dict(self) -> dict:
        """Plain-data view in the order used by the JSON output."""
        mu, nu = self.detection.mu, self.detection.nu
        return {
            "p_max": self.p_max,
            "p_error": self.p_error,
            "R": self.R,
            "Q": [self.Q.real, self.Q.imag],
            "phi_e": self.phi_e,
            "chi_e": self.chi_e,
            "mu": [[mu.c1.real, mu.c1.imag], [mu.c2.real, mu.c2.imag]],
            "nu": [[nu.c1.real, nu.c1.imag], [nu.c2.real, nu.c2.imag]],
            "degenerate": self.degenerate,
            "strategy": self.strategy,
        }


def _assemble(ensemble, R, Q, basis, chi=None, p_projective=None) -> FilterSolution:
    R = float(R)
    Q = complex(Q)
    qabs = abs(Q)
    root = math.hypot(R, qabs)
    degenerate = root < ZERO_TOL
    if degenerate:
        phi = 0.0
    else:
        phi = 0.5 * math.atan2(qabs, R)
    if chi is None:
        chi = 0.0 if qabs < ZERO_TOL else cmath.phase(Q)
        if chi == -math.pi:
            chi = math.pi
    if p_projective is None:
        p_projective = 0.5 + root

    w1, w2 = ensemble.weights
    strategy, p_max = PROJECTIVE, p_projective
    if max(w1, w2) > p_projective + GUESS_MARGIN:
        strategy = GUESS_1 if w1 >= w2 else GUESS_2
        p_max = max(w1, w2)
    return FilterSolution(
        R=R,
        Q=Q,
        p_max=p_max,
        p_error=1.0 - p_max,
        detection=DetectionPair.from_angles(phi, chi, basis),
        degenerate=degenerate,
        strategy=strategy,
    )


def detection_pair(ensemble: Ensemble, phi: float, chi: float) -> DetectionPair:
    """Detection pair at angles ``(phi, chi)`` in the ensemble's plane basis."""
    overlaps = gram(ensemble).entries
    return DetectionPair.from_angles(
        phi, chi, _plane_basis(ensemble, overlaps, basis_partner(overlaps))
    )


def _setup(ensemble: Ensemble):
    overlaps = gram(ensemble).entries
    partner = basis_partner(overlaps)
    a, b = plane_coordinates(overlaps, partner)
    return overlaps, partner, a, b


def objective(ensemble: Ensemble, phi, chi):
    """Success probability of the rank-one measurement at ``(phi, chi)``.

    Accepts scalar or broadcastable array angles.
    """
    _, _, a, b = _setup(ensemble)
    return _objective(ensemble, a, b, phi, chi)


def _objective(ensemble, a, b, phi, chi):
    phi = np.asarray(phi, dtype=float)[..., None]
    chi = np.asarray(chi, dtype=float)[..., None]
    amp = a * np.cos(phi) + np.exp(-1j * chi) * b * np.sin(phi)
    prob = amp.real**2 + amp.imag**2
    eta = np.asarray(ensemble.priors)
    m = ensemble.subset_size
    p = (eta[:m] * prob[..., :m]).sum(-1) + (eta[m:] * (1.0 - prob[..., m:])).sum(-1)
    return float(p) if p.ndim == 0 else p


def solve(ensemble: Ensemble) -> FilterSolution:
    """Minimum-error measurement for any two-dimensional ensemble."""
    overlaps, p, a, _ = _setup(ensemble)
    eta = np.asarray(ensemble.priors)
    sign = ensemble.signs
    mag2 = np.abs(a) ** 2
    R = np.sum(sign * eta * (mag2 - 0.5))
    terms = overlaps[p, :] * overlaps[:, 0] - overlaps[p, 0] * mag2
    Q = np.sum(sign * eta * terms) / math.sqrt(1.0 - abs(overlaps[0, p]) ** 2)
    return _assemble(ensemble, R, Q, _plane_basis(ensemble, overlaps, p))


def solve_real(ensemble: Ensemble) -> FilterSolution:
    """Solver for ensembles whose plane coordinates are all real.

    ``Q`` is then real and the relative phase of the detection state is 0
    for ``Q >= 0`` and pi otherwise.
    """
    overlaps, p, a, b = _setup(ensemble)
    worst = max(np.max(np.abs(a.imag)), np.max(np.abs(b.imag)))
    if worst > NORM_TOL:
        raise NotRealError(f"plane coordinates have imaginary parts up to {worst:.3e}")
    a, b = a.real, b.real
    eta = np.asarray(ensemble.priors)
    sign = ensemble.signs
    R = np.sum(sign * eta * (a**2 - 0.5))
    # b carries the sign exp(i gamma_k) = +-1 of each state's second coordinate
    Q = float(np.sum(sign * eta * a * b))
    chi = 0.0 if Q >= 0 else math.pi
    return _assemble(ensemble, R, Q, _plane_basis(ensemble, overlaps, p), chi=chi)


def solve_three(ensemble: Ensemble) -> FilterSolution:
    """Three-state filtering (``N = 3``, ``M = 1``) from overlaps alone."""
    if len(ensemble) != 3 or ensemble.subset_size != 1:
        raise ShapeError(f"need N=3 and M=1, got N={len(ensemble)}, M={ensemble.subset_size}")
    overlaps, p, a, b = _setup(ensemble)
    _, e2, e3 = ensemble.priors
    a12, a13, a23 = overlaps[0, 1], overlaps[0, 2], overlaps[1, 2]
    s12, s13 = abs(a12) ** 2, abs(a13) ** 2
    triple = (a12 * a23 * overlaps[2, 0]).real

    R = 0.5 - e2 * s12 - e3 * s13
    q2 = (
        e2**2 * s12 * (1 - s12)
        + e3**2 * s13 * (1 - s13)
        + 2 * e2 * e3 * (triple - s12 * s13)
    )
    qabs = math.sqrt(max(q2, 0.0))
    disc = 1 - 4 * (e2 * (1 - e2) * s12 + e3 * (1 - e3) * s13) + 8 * e2 * e3 * triple
    p_projective = 0.5 + 0.5 * math.sqrt(max(disc, 0.0))

    # only the phase of Q is taken from the general sum
    q_general = -np.sum(np.asarray(ensemble.priors)[1:] * (a.conj() * b)[1:])
    chi_q = cmath.phase(q_general) if qabs >= ZERO_TOL else 0.0
    Q = qabs * cmath.exp(1j * chi_q)
    return _assemble(
        ensemble, R, Q, _plane_basis(ensemble, overlaps, p), p_projective=p_projective
    )
