"""Independent brute-force reference implementations.

These deliberately share no code with the optimized norm engine: no prefix
sums, no window reduction, no level closed form.  Windows are enumerated
directly (with configurable padding beyond the provably sufficient family)
and each window sum is recomputed from scratch.  Used only in tests.
"""

from __future__ import annotations

from math import ceil

import numpy as np

from .core import Exponents, Sequence


def _dense(x: Sequence, pad: int) -> tuple[int, np.ndarray]:
    """(first index, dense |x| array) covering the support plus `pad` zeros."""
    a, b = x.support_bounds()
    lo = a - pad
    arr = np.zeros(b + pad - lo + 1, dtype=np.float64)
    for k in range(a, b + 1):
        arr[k - lo] = abs(x[k])
    return lo, arr


def oracle_morrey_norm(x: Sequence, e: Exponents, m_pad: int = 10, N_pad: int = 10) -> float:
    """Strong norm by direct double loop over padded window families."""
    if x.support_bounds() is None:
        return 0.0
    a, b = x.support_bounds()
    n_hi = ceil((b - a) / 2) + N_pad
    lo, arr = _dense(x, m_pad + n_hi)
    powed = arr**e.p
    s = e.scaling
    best = 0.0
    for m in range(a - m_pad, b + m_pad + 1):
        for N in range(0, n_hi + 1):
            seg = powed[m - N - lo : m + N - lo + 1]
            val = (2 * N + 1) ** s * float(np.sum(seg)) ** (1.0 / e.p)
            if val > best:
                best = val
    return best


def oracle_weak_norm(x: Sequence, e: Exponents, gamma_grid: int = 2) -> float:
    """Weak norm evaluated on a refining level grid, converging from below.

    For each window the levels are v*(1 - eps_j) for every distinct value v
    with eps_j in {1e-6, 1e-7, ...} (gamma_grid of them), plus midpoints
    between consecutive distinct values.  Counts use the strict inequality
    |x_k| > gamma directly.
    """
    if gamma_grid < 2:
        raise ValueError(f"gamma_grid must be >= 2, got {gamma_grid}")
    if x.support_bounds() is None:
        return 0.0
    a, b = x.support_bounds()
    n_max = ceil((b - a) / 2)
    lo, arr = _dense(x, n_max)
    s = e.scaling
    inv_p = 1.0 / e.p
    eps = np.asarray([10.0 ** (-(6 + j)) for j in range(gamma_grid)])
    best = 0.0
    for m in range(a, b + 1):
        for N in range(0, n_max + 1):
            seg = arr[m - N - lo : m + N - lo + 1]
            nz = np.sort(seg[seg > 0])
            if len(nz) == 0:
                continue
            vs = np.unique(nz)
            grid = np.concatenate([np.outer(vs, 1.0 - eps).ravel(), (vs[1:] + vs[:-1]) / 2])
            counts = len(nz) - np.searchsorted(nz, grid, side="right")
            val = (2 * N + 1) ** s * float(np.max(grid * counts**inv_p))
            if val > best:
                best = val
    return best
