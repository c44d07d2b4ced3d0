"""Regenerate the JSON fixtures shipped in src/qfilter/fixtures/."""

import math
from pathlib import Path

import numpy as np

from qfilter import make_symmetric, make_trine, random_ensemble, validate_ensemble
from qfilter.io import dumps, ensemble_to_dict

OUT = Path(__file__).resolve().parents[1] / "src" / "qfilter" / "fixtures"


def write(name, data):
    (OUT / name).write_text(dumps(data) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    write("trine.json", ensemble_to_dict(make_trine()))
    for label, beta in (("pi12", math.pi / 12), ("pi6", math.pi / 6), ("pi4", math.pi / 4)):
        write(f"symmetric_{label}.json", ensemble_to_dict(make_symmetric(beta)))

    # |<psi_1|psi_2>| = 0.6 with equal priors: error probability 0.1
    two = validate_ensemble([(1.0, 0.0), (0.6, 0.8)], [0.5, 0.5], 1)
    write("helstrom_two_state.json", ensemble_to_dict(two))

    write("random_seed_42.json", ensemble_to_dict(random_ensemble(np.random.default_rng(42), 5)))

    # three coplanar states rotated into four dimensions by a random unitary
    rng = np.random.default_rng(7)
    u, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    plane = np.array([[1, 0], [0.6, 0.8j], [-0.28, 0.96]], dtype=complex)
    raw = plane @ u[:2, :]
    write(
        "raw_coplanar_4d.json",
        {
            "raw_states": [[[z.real, z.imag] for z in row] for row in raw],
            "priors": [0.5, 0.25, 0.25],
            "subset_size": 1,
        },
    )


if __name__ == "__main__":
    main()
