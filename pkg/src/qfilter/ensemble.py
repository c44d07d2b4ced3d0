"""Ensemble types, overlap (Gram) matrices and the two-dimensional embedding.

States are stored as amplitude pairs in a fixed orthonormal basis of the
plane they span.  Raw states given in a larger space are brought into that
form by :func:`embed_raw`, which expresses every state in the basis made of
the first state and the unit vector ``v`` orthogonal to it inside the plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateBasisError,
    LengthMismatch,
    NormalizationError,
    PartitionError,
    RankError,
)

#: Tolerance on stored invariants (state norms, prior sum, Hermiticity).
NORM_TOL = 1e-12
#: Default tolerance for rank and reproduction decisions in :func:`embed_raw`.
RANK_TOL = 1e-9
#: Two states count as parallel when ``|<psi_1|psi_k>| >= 1 - PARALLEL_TOL``.
PARALLEL_TOL = 1e-9
#: Smallest eigenvalue accepted for a positive semidefinite Gram matrix.
PSD_TOL = 1e-10


def _as_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex scalar needs [re, im], got {value!r}")
        value = complex(float(value[0]), float(value[1]))
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite amplitude {z!r}")
    return z


@dataclass(frozen=True)
class PureState2D:
    """Normalized state ``c1|e1> + c2|e2>`` of a two-dimensional space."""

    c1: complex
    c2: complex

    def __post_init__(self):
        c1, c2 = _as_complex(self.c1), _as_complex(self.c2)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)
        norm = abs(c1) ** 2 + abs(c2) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state ({c1}, {c2}) has squared norm {norm!r}")

    @classmethod
    def from_vector(cls, vec: Sequence[complex]) -> "PureState2D":
        if len(vec) != 2:
            raise LengthMismatch(f"expected 2 amplitudes, got {len(vec)}")
        return cls(vec[0], vec[1])

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c1, self.c2], dtype=complex)

    def inner(self, other: "PureState2D") -> complex:
        """Return ``<self|other>``."""
        return self.c1.conjugate() * other.c1 + self.c2.conjugate() * other.c2

    def with_phase(self, theta: float) -> "PureState2D":
        ph = complex(math.cos(theta), math.sin(theta))
        return PureState2D(ph * self.c1, ph * self.c2)


@dataclass(frozen=True)
class RawState:
    """Normalized state given by its amplitudes in a d-dimensional basis."""

    amplitudes: tuple[complex, ...]

    def __post_init__(self):
        amps = tuple(_as_complex(a) for a in self.amplitudes)
        if not amps:
            raise LengthMismatch("raw state needs at least one amplitude")
        object.__setattr__(self, "amplitudes", amps)
        norm = sum(abs(a) ** 2 for a in amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"raw state has squared norm {norm!r}")

    @property
    def dim(self) -> int:
        return len(self.amplitudes)


@dataclass(frozen=True)
class Ensemble:
    """States with prior probabilities, split into the first ``subset_size``
    states (subset 1) and the rest (subset 2).

    Construction validates every invariant; use :func:`validate_ensemble` to
    build one from loosely typed input.
    """

    states: tuple[PureState2D, ...]
    priors: tuple[float, ...]
    subset_size: int

    def __post_init__(self):
        states = tuple(
            s if isinstance(s, PureState2D) else PureState2D.from_vector(s) for s in self.states
        )
        priors = tuple(float(p) for p in self.priors)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "priors", priors)
        n = len(states)
        if len(priors) != n:
            raise LengthMismatch(f"{n} states but {len(priors)} priors")
        m = self.subset_size
        if isinstance(m, bool) or int(m) != m:
            raise PartitionError(f"subset size must be an integer, got {m!r}")
        object.__setattr__(self, "subset_size", int(m))
        if n < 2 or not 1 <= m < n:
            raise PartitionError(f"need 1 <= M < N with N >= 2, got M={m}, N={n}")
        for k, p in enumerate(priors):
            if not math.isfinite(p) or p < 0:
                raise NormalizationError(f"prior {k} is {p!r}; priors must be finite and >= 0")
        total = math.fsum(priors)
        if abs(total - 1.0) > NORM_TOL:
            raise NormalizationError(f"priors sum to {total!r}, expected 1")

    def __len__(self) -> int:
        return len(self.states)

    @property
    def vectors(self) -> np.ndarray:
        """``(N, 2)`` complex array of amplitudes."""
        return np.array([[s.c1, s.c2] for s in self.states], dtype=complex)

    @property
    def signs(self) -> np.ndarray:
        """+1 for subset-1 states, -1 for subset-2 states."""
        sg = -np.ones(len(self.states))
        sg[: self.subset_size] = 1.0
        return sg

    @property
    def weights(self) -> tuple[float, float]:
        """Total prior weight ``(w1, w2)`` of the two subsets."""
        m = self.subset_size
        return math.fsum(self.priors[:m]), math.fsum(self.priors[m:])

    def reordered(self, order: Sequence[int], subset_size: int) -> "Ensemble":
        """Return the ensemble with states permuted by ``order``."""
        if sorted(order) != list(range(len(self))):
            raise LengthMismatch(f"{order!r} is not a permutation of {len(self)} states")
        return Ensemble(
            tuple(self.states[i] for i in order),
            tuple(self.priors[i] for i in order),
            subset_size,
        )


@dataclass(frozen=True, eq=False)
class OverlapMatrix:
    """Gram matrix ``A[k, l] = <psi_k|psi_l>`` of an ensemble."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise LengthMismatch(f"overlap matrix must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("overlap matrix has non-finite entries")
        if np.max(np.abs(a - a.conj().T), initial=0.0) > NORM_TOL:
            raise ValueError("overlap matrix is not Hermitian")
        if np.max(np.abs(np.diag(a) - 1.0), initial=0.0) > NORM_TOL:
            raise NormalizationError("overlap matrix diagonal differs from 1")
        if np.linalg.eigvalsh(a)[0] < -PSD_TOL:
            raise ValueError("overlap matrix is not positive semidefinite")

    def __getitem__(self, idx):
        return self.entries[idx]

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues."""
        return np.linalg.eigvalsh(self.entries)


def validate_ensemble(states: Iterable, priors: Sequence[float], M: int) -> Ensemble:
    """Build an :class:`Ensemble`, raising on any violated invariant.

    ``states`` may hold :class:`PureState2D` objects, amplitude pairs or
    ``[[re, im], [re, im]]`` lists.
    """
    coerced = []
    for k, s in enumerate(states):
        if isinstance(s, PureState2D):
            coerced.append(s)
            continue
        if len(s) != 2:
            raise LengthMismatch(f"state {k} has {len(s)} amplitudes, expected 2")
        try:
            coerced.append(PureState2D(_as_complex(s[0]), _as_complex(s[1])))
        except NormalizationError as exc:
            raise NormalizationError(f"state {k}: {exc}") from None
    return Ensemble(tuple(coerced), tuple(priors), M)


def gram(ensemble: Ensemble) -> OverlapMatrix:
    """Overlap matrix of the ensemble states."""
    v = ensemble.vectors
    return OverlapMatrix(v.conj() @ v.T)


def basis_partner(overlaps: np.ndarray) -> int:
    """Index of the first state not parallel to state 0.

    That state plays the role of the second basis state when building the
    orthonormal basis ``{psi_1, v}``.
    """
    mags = np.abs(overlaps[0, 1:])
    for k, mag in enumerate(mags, start=1):
        if mag < 1.0 - PARALLEL_TOL:
            return k
    raise DegenerateBasisError(
        "all states are parallel; the optimal strategy is the trivial guess "
        "of the subset with the larger prior weight"
    )


def plane_coordinates(overlaps: np.ndarray, partner: int) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates ``(<psi_1|psi_k>, <v|psi_k>)`` of every state.

    ``v`` is the normalized component of the partner state orthogonal to
    ``psi_1``, so ``<v|psi_partner>`` is real and positive.  Only overlaps
    are used, which keeps the result independent of the input basis.
    """
    a = overlaps[0, :]
    a1p = overlaps[0, partner]
    b = (overlaps[partner, :] - overlaps[partner, 0] * a) / math.sqrt(1.0 - abs(a1p) ** 2)
    return a.copy(), b


def _first_rank_violation(g: np.ndarray, tol: float) -> int | None:
    n = g.shape[0]
    for k in range(2, n):
        ev = np.linalg.eigvalsh(g[: k + 1, : k + 1])
        if ev[-3] > tol:
            return k
    return None


def embed_raw(raw_states: Sequence, tol: float = RANK_TOL) -> list[PureState2D]:
    """Express raw states of any dimension as amplitude pairs in the plane
    they span.

    The first state maps to ``(1, 0)``; the others get coordinates
    ``(<psi_1|psi_k>, <v|psi_k>)``.  Raises :class:`RankError` when the states
    do not share a common plane to within ``tol``.
    """
    raws = [r if isinstance(r, RawState) else RawState(tuple(r)) for r in raw_states]
    if len(raws) < 2:
        raise LengthMismatch("embedding needs at least two states")
    dims = {r.dim for r in raws}
    if len(dims) != 1:
        raise LengthMismatch(f"raw states have mixed dimensions {sorted(dims)}")
    mat = np.array([r.amplitudes for r in raws], dtype=complex)
    mat /= np.linalg.norm(mat, axis=1)[:, None]
    g = mat.conj() @ mat.T

    if len(raws) > 2:
        ev = np.linalg.eigvalsh(g)
        if ev[-3] > tol:
            k = _first_rank_violation(g, tol)
            raise RankError(
                f"states span more than two dimensions (third Gram eigenvalue "
                f"{ev[-3]:.3e} > {tol:g}); state {k} leaves the plane of the "
                f"states before it"
            )

    p = basis_partner(g)
    a, b = plane_coordinates(g, p)
    coords = np.stack([a, b], axis=1)
    coords /= np.linalg.norm(coords, axis=1)[:, None]
    coords[0] = (1.0, 0.0)
    coords[p, 1] = coords[p, 1].real
    out = [PureState2D(c[0], c[1]) for c in coords]

    err = np.max(np.abs(coords.conj() @ coords.T - g))
    if err > tol:
        raise RankError(f"states are not coplanar to within {tol:g} (overlap error {err:.3e})")
    return out


def random_ensemble(
    rng: np.random.Generator,
    n_states: int | None = None,
    subset_size: int | None = None,
    real: bool = False,
) -> Ensemble:
    """Random ensemble: Haar-random states, flat-Dirichlet priors."""
    n = int(rng.integers(2, 7)) if n_states is None else n_states
    m = int(rng.integers(1, n)) if subset_size is None else subset_size
    vec = rng.normal(size=(n, 2))
    if not real:
        vec = vec + 1j * rng.normal(size=(n, 2))
    vec = vec / np.linalg.norm(vec, axis=1)[:, None]
    priors = rng.dirichlet(np.ones(n))
    priors[-1] = 1.0 - math.fsum(priors[:-1])
    return Ensemble(tuple(PureState2D(c[0], c[1]) for c in vec), tuple(priors), m)
