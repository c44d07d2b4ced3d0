"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the two hot paths: the full refined grid search on one ensemble and a
one-million-trial Monte Carlo tally.  Also checks that both backends return
the same answers.
"""

import argparse
import math
import timeit

import numpy as np

from qfilter import _backend, make_trine, random_ensemble
from qfilter.oracle import DEFAULT_STEPS
from qfilter.solver import _setup


def grid_args(ensemble):
    _, _, a, b = _setup(ensemble)
    return (
        np.ascontiguousarray(a.real),
        np.ascontiguousarray(a.imag),
        np.ascontiguousarray(b.real),
        np.ascontiguousarray(b.imag),
        np.asarray(ensemble.priors, dtype=float),
        ensemble.subset_size,
    )


def tally_args():
    trine = make_trine()
    cum = np.cumsum(trine.priors)
    cum[-1] = 1.0
    return cum, np.abs(trine.vectors[:, 0]) ** 2


def bench(kernels, repeat):
    ens = random_ensemble(np.random.default_rng(3), n_states=6, subset_size=3)
    args = grid_args(ens)
    grid = np.arange(DEFAULT_STEPS) * (math.pi / DEFAULT_STEPS)
    fine = np.linspace(0, 0.01, 21)

    def grid_run():
        kernels.grid_argmax(*args, grid, grid)
        kernels.grid_argmax(*args, fine, fine)
        kernels.grid_argmax(*args, fine, fine)

    cum, prob = tally_args()

    def tally_run():
        kernels.tally(np.random.PCG64(1), 10**6, cum, prob)

    t_grid = min(timeit.repeat(grid_run, number=1, repeat=repeat))
    t_tally = min(timeit.repeat(tally_run, number=1, repeat=repeat))
    return t_grid, t_tally, kernels.grid_argmax(*args, grid, grid)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"python": _backend.load("python")}
    try:
        backends["compiled"] = _backend.load("compiled")
    except ImportError:
        print("compiled extension not built; timing the numpy fallback only")

    rows = {name: bench(k, args.repeat) for name, k in backends.items()}
    print(f"{'backend':<10}{'grid 400^2 + 2 refinements':>30}{'tally 1e6 trials':>20}")
    for name, (t_grid, t_tally, _) in rows.items():
        print(f"{name:<10}{t_grid * 1e3:>27.2f} ms{t_tally * 1e3:>17.2f} ms")

    if len(rows) == 2:
        py, cc = rows["python"], rows["compiled"]
        print(f"speedup   {py[0] / cc[0]:>27.1f} x{py[1] / cc[1]:>17.1f} x")
        assert abs(py[2][0] - cc[2][0]) < 1e-14, "grid maxima differ"
        cum, prob = tally_args()
        same = np.array_equal(
            backends["python"].tally(np.random.PCG64(1), 10**5, cum, prob),
            backends["compiled"].tally(np.random.PCG64(1), 10**5, cum, prob),
        )
        print(f"tally counts identical across backends: {same}")


if __name__ == "__main__":
    main()
