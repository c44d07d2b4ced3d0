"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np

#: Trials drawn per block, bounding memory at ~16 bytes per trial.
BLOCK = 1 << 18


def grid_argmax(a_re, a_im, b_re, b_im, eta, m, phis, chis):
    c, s = np.cos(phis)[:, None, None], np.sin(phis)[:, None, None]
    cc, sc = np.cos(chis)[None, :, None], np.sin(chis)[None, :, None]
    xr = a_re * c + (b_re * cc + b_im * sc) * s
    xi = a_im * c + (b_im * cc - b_re * sc) * s
    pr = xr * xr + xi * xi
    p = (eta[:m] * pr[..., :m]).sum(-1) + (eta[m:] * (1.0 - pr[..., m:])).sum(-1)
    i, j = np.unravel_index(np.argmax(p), p.shape)
    return float(p[i, j]), int(i), int(j)


def tally(bit_generator, trials, cum, prob):
    n = cum.shape[0]
    gen = np.random.Generator(bit_generator)
    counts = np.zeros(2 * n, dtype=np.int64)
    done = 0
    while done < trials:
        size = min(BLOCK, trials - done)
        u = gen.random(2 * size)
        k = np.minimum(np.searchsorted(cum, u[0::2], side="right"), n - 1)
        miss = u[1::2] >= prob[k]
        counts += np.bincount(2 * k + miss, minlength=2 * n)
        done += size
    return counts.reshape(n, 2)
