"""Exact computation of the four window-supremum norm families.

All four norms share one shape: maximize factor(N) * (window p-sum)^(1/p)
over the finite window family from :func:`morrey.core.enumeration_bound`.
The classical strong norm uses factor(N) = (2N+1)^(1/q - 1/p); the
generalized strong norm uses factor(N) = 1 / (phi(2N+1) (2N+1)^(1/p)).

Weak norms are reduced to strong ones by level-set decomposition: the
supremum over levels gamma is approached as gamma increases to a distinct
value v with count |{k in window : |x_k| >= v}|, so

    weak(x) = max over distinct v > 0 of  v * strong(indicator of |x| >= v)

because the p-sum of a 0/1 sequence is its count.  This is exact, and each
indicator norm is again a window supremum.

The engine maximizes by branch and bound over the radius N: the sliding
maximum F(N) of window p-sums is nondecreasing in N while the factor is
nonincreasing (up to the almost-monotonicity constant), so
factor(N1) * F(N2)^(1/p) bounds the value on [N1, N2].
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .core import Exponents, Sequence, Window, support_block, window_psum
from .phi import GpMembershipError, GpReport, HorizonExceededError, PhiFunction, check_gp

# Chunks of the m-scan smaller than this are never parallelized.
_PARALLEL_MIN = 1 << 14


@dataclass(frozen=True)
class NormReport:
    """A norm value together with its witnesses.

    ``arg_window`` is present whenever the value is positive; ``arg_gamma``
    only for weak norms (the distinct value whose closed-form term attains
    the max, with the convention that the level supremum is approached as
    gamma increases to it).  ``exact`` is False when an almost-monotone
    parameter function forced a tail bound, in which case the true norm is
    at most ``tail_bound_factor`` times ``value``.
    """

    value: float
    arg_window: Optional[Window] = None
    arg_gamma: Optional[float] = None
    exact: bool = True
    tail_bound_factor: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "arg_window": None
            if self.arg_window is None
            else {"m": self.arg_window.m, "N": self.arg_window.N},
            "arg_gamma": self.arg_gamma,
            "exact": self.exact,
            "tail_bound_factor": self.tail_bound_factor,
        }


_ZERO_REPORT = NormReport(value=0.0)


class _Best:
    """Running max with the deterministic tie-break (value, then N, then m)."""

    __slots__ = ("value", "N", "m")

    def __init__(self) -> None:
        self.value = -np.inf
        self.N = -1
        self.m = 0

    def offer(self, value: float, N: int, m: int) -> None:
        if value > self.value or (
            value == self.value and (N < self.N or (N == self.N and m < self.m))
        ):
            self.value = value
            self.N = N
            self.m = m


def _chunk_argmax(sums: np.ndarray, executor: Optional[ThreadPoolExecutor], threads: int):
    """(max, first argmax) of a 1-d array, optionally chunked over threads.

    The reduction is deterministic: per-chunk maxima are combined by value
    then by smallest index, so the result is identical for any thread count.
    """
    if executor is None or threads <= 1 or len(sums) < _PARALLEL_MIN:
        i = int(np.argmax(sums))
        return float(sums[i]), i
    bounds = np.linspace(0, len(sums), threads + 1, dtype=int)
    chunks = [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]

    def work(span):
        lo, hi = span
        j = int(np.argmax(sums[lo:hi]))
        return float(sums[lo + j]), lo + j

    best_v, best_i = -np.inf, -1
    for v, i in executor.map(work, chunks):
        if v > best_v or (v == best_v and i < best_i):
            best_v, best_i = v, i
    return best_v, best_i


def _window_supremum(
    block: np.ndarray,
    a: int,
    b: int,
    p: float,
    factor: Callable[[int], float],
    bound_slack: float,
    executor: Optional[ThreadPoolExecutor] = None,
    threads: int = 1,
) -> tuple[float, int, int]:
    """Exact max of factor(N) * (window p-sum)^(1/p) over the enumeration family.

    ``block`` holds |x_k|^p for k in [a, b] with nonzero endpoints.  Requires
    factor(N') <= bound_slack * factor(N) for N <= N'.  Returns (value, m, N)
    with ties broken by smallest N, then smallest m.
    """
    n = b - a + 1
    n_max = n // 2  # == ceil((b - a) / 2)
    prefix = np.concatenate(([0.0], np.cumsum(block)))
    total = float(prefix[-1])
    inv_p = 1.0 / p
    best = _Best()
    cache: dict[int, float] = {}  # N -> max window p-sum F(N)

    def evaluate(N: int) -> float:
        # For m < a+N (or m > b-N) the clipped window content is covered by a
        # window of strictly smaller radius with value >= and better tie-break,
        # so restricting the scan to unclipped centers is lossless.
        if 2 * N + 1 >= n:
            F = total
            m = max(a, b - N)
        else:
            width = 2 * N + 1
            sums = prefix[width:] - prefix[:-width]
            F, i = _chunk_argmax(sums, executor, threads)
            m = a + i + N
        cache[N] = F
        best.offer(factor(N) * F**inv_p, N, m)
        return F

    evaluate(0)
    if n_max > 0:
        evaluate(n_max)
    stack = [(0, n_max)]
    while stack:
        n1, n2 = stack.pop()
        if n2 - n1 <= 1:
            continue
        bound = bound_slack * factor(n1) * cache[n2] ** inv_p
        if bound < best.value or (bound == best.value and n1 >= best.N):
            continue
        mid = (n1 + n2) // 2
        evaluate(mid)
        stack.append((mid, n2))
        stack.append((n1, mid))
    return best.value, best.m, best.N


class _WeakTerm(NamedTuple):
    value: float
    N: int
    m: int
    gamma: float


def _weak_supremum(
    abs_block: np.ndarray,
    a: int,
    p: float,
    factor: Callable[[int], float],
    bound_slack: float,
    prune_bound: Optional[Callable[[int], float]],
    executor: Optional[ThreadPoolExecutor] = None,
    threads: int = 1,
) -> _WeakTerm:
    """Level-set decomposition of the weak window supremum.

    ``prune_bound(count)`` must upper-bound the strong norm of any 0/1
    sequence with that many ones (used only to skip levels that cannot win;
    pruning is strict, so value ties keep their deterministic tie-break:
    largest gamma after smallest N, then smallest m).
    """
    nz = np.sort(abs_block[abs_block > 0])[::-1]
    distinct = nz[np.concatenate(([True], nz[1:] != nz[:-1]))] if len(nz) else nz
    # count of |x_k| >= v for each distinct v (descending)
    counts = np.searchsorted(-nz, -distinct, side="right")
    best: Optional[_WeakTerm] = None
    for v, c in zip(distinct, counts):
        v = float(v)
        if best is not None and prune_bound is not None:
            if v * prune_bound(int(c)) < best.value:
                continue
        level = (abs_block >= v).astype(np.float64)
        idx = np.nonzero(level)[0]
        la, lb = int(idx[0]), int(idx[-1])
        value, m, N = _window_supremum(
            level[la : lb + 1],
            a + la,
            a + lb,
            p,
            factor,
            bound_slack,
            executor,
            threads,
        )
        term = _WeakTerm(v * value, N, m, v)
        if (
            best is None
            or term.value > best.value
            or (
                term.value == best.value
                and (term.N, term.m, -term.gamma) < (best.N, best.m, -best.gamma)
            )
        ):
            best = term
    assert best is not None
    return best


def _maybe_executor(threads: int):
    if threads > 1:
        return ThreadPoolExecutor(max_workers=threads)
    return None


# Classical norms -------------------------------------------------------


def morrey_window_quantity(x: Sequence, w: Window, e: Exponents) -> float:
    """(2N+1)^(1/q - 1/p) * (sum over the window of |x_k|^p)^(1/p)."""
    s = window_psum(x, w, e.p)
    return w.cardinality() ** e.scaling * s ** (1.0 / e.p)


def morrey_norm(x: Sequence, e: Exponents, threads: int = 1) -> NormReport:
    """Exact strong norm with witness window."""
    sb = support_block(x)
    if sb is None:
        return _ZERO_REPORT
    a, b, abs_block = sb
    s = e.scaling
    # Normalize by the peak before powering: |x_k|^p under/overflows for
    # extreme magnitudes, and the norm is absolutely homogeneous.
    peak = float(np.max(abs_block))
    ex = _maybe_executor(threads)
    try:
        value, m, N = _window_supremum(
            (abs_block / peak) ** e.p, a, b, e.p, lambda N: (2 * N + 1) ** s, 1.0, ex, threads
        )
    finally:
        if ex is not None:
            ex.shutdown()
    return NormReport(value=peak * value, arg_window=Window(m, N))


def weak_window_quantity(x: Sequence, w: Window, e: Exponents) -> tuple[float, Optional[float]]:
    """Closed-form level supremum on a single window.

    Returns (value, gamma) where gamma is the maximizing distinct value
    (largest on ties); the supremum over levels in [v', v) is approached as
    gamma increases to v with count |{k in window : |x_k| >= v}|.
    """
    lo = max(w.lo, x.offset)
    hi = min(w.hi, x.offset + len(x.values) - 1)
    if hi < lo:
        return 0.0, None
    vals = np.abs(
        np.asarray(x.values[lo - x.offset : hi - x.offset + 1], dtype=np.float64)
    )
    nz = np.sort(vals[vals > 0])[::-1]
    if len(nz) == 0:
        return 0.0, None
    distinct = nz[np.concatenate(([True], nz[1:] != nz[:-1]))]
    counts = np.searchsorted(-nz, -distinct, side="right")
    c = w.cardinality() ** e.scaling
    terms = c * distinct * counts ** (1.0 / e.p)
    i = int(np.argmax(terms))  # first (largest gamma) on ties
    return float(terms[i]), float(distinct[i])


def weak_morrey_norm(x: Sequence, e: Exponents, threads: int = 1) -> NormReport:
    """Exact weak norm via level-set decomposition."""
    sb = support_block(x)
    if sb is None:
        return _ZERO_REPORT
    a, b, abs_block = sb
    s = e.scaling
    inv_q = 1.0 / e.q

    def prune(count: int) -> float:
        # Strong norm of a 0/1 sequence with `count` ones is at most
        # max_L L^(1/q-1/p) min(L, count)^(1/p) <= L_c^(1/q), L_c odd >= count.
        lc = count if count % 2 == 1 else count + 1
        return lc**inv_q

    ex = _maybe_executor(threads)
    try:
        term = _weak_supremum(
            abs_block, a, e.p, lambda N: (2 * N + 1) ** s, 1.0, prune, ex, threads
        )
    finally:
        if ex is not None:
            ex.shutdown()
    return NormReport(
        value=term.value, arg_window=Window(term.m, term.N), arg_gamma=term.gamma
    )


# Generalized norms -----------------------------------------------------


def _gen_setup(
    x: Sequence, p: float, phi: PhiFunction
) -> Optional[tuple[int, int, np.ndarray, Callable[[int], float], float, Optional[GpReport]]]:
    """Shared validation for the generalized norms.

    Returns (a, b, abs_block, factor, bound_slack, gp_report) or None for the
    zero sequence.  ``gp_report`` is set exactly when phi is only almost
    monotone, in which case the computed max over the finite family may
    undershoot the true supremum by at most a factor c_inc.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    sb = support_block(x)
    if sb is None:
        return None
    a, b, abs_block = sb
    n = b - a + 1
    t_need = 2 * (n // 2) + 1
    if phi.horizon is not None and phi.horizon < t_need:
        raise HorizonExceededError(
            f"{phi.label} is defined up to t={phi.horizon}; this computation needs t={t_need}"
        )
    inv_p = 1.0 / p

    def factor(N: int) -> float:
        t = 2 * N + 1
        return 1.0 / (phi(t) * t**inv_p)

    if phi.monotonicity_mode == "exact":
        return a, b, abs_block, factor, 1.0, None
    t_check = max(t_need, 101)
    if phi.horizon is not None:
        t_check = min(t_check, phi.horizon)
    report = check_gp(phi, p, t_check)
    if not report.member:
        raise GpMembershipError(
            f"{phi.label} failed the admissibility check for p={p} at horizon {t_check}"
        )
    return a, b, abs_block, factor, report.c_inc, report


def gen_morrey_norm(x: Sequence, p: float, phi: PhiFunction, threads: int = 1) -> NormReport:
    """Generalized strong norm sup (1/phi(2N+1)) ((1/(2N+1)) sum |x_k|^p)^(1/p).

    Exact for exactly monotone phi; for almost-monotone phi the report
    carries tail_bound_factor = c_inc with the contract
    true norm <= tail_bound_factor * value.
    """
    setup = _gen_setup(x, p, phi)
    if setup is None:
        return _ZERO_REPORT
    a, b, abs_block, factor, slack, report = setup
    peak = float(np.max(abs_block))
    ex = _maybe_executor(threads)
    try:
        value, m, N = _window_supremum(
            (abs_block / peak) ** p, a, b, p, factor, slack, ex, threads
        )
    finally:
        if ex is not None:
            ex.shutdown()
    if report is None:
        return NormReport(value=peak * value, arg_window=Window(m, N))
    return NormReport(
        value=peak * value,
        arg_window=Window(m, N),
        exact=False,
        tail_bound_factor=report.c_inc,
    )


def gen_weak_norm(x: Sequence, p: float, phi: PhiFunction, threads: int = 1) -> NormReport:
    """Generalized weak norm: level-set decomposition with the phi factor."""
    setup = _gen_setup(x, p, phi)
    if setup is None:
        return _ZERO_REPORT
    a, b, abs_block, factor, slack, report = setup
    c_const = 1.0 if report is None else max(report.c_dec, report.c_inc)

    def prune(count: int) -> float:
        # Strong generalized norm of a 0/1 sequence with `count` ones is at
        # most max(c_dec, c_inc) / phi(L_c) with L_c the smallest odd >= count:
        # below L_c the quantity is 1/phi(t) <= c_dec/phi(L_c); above it is
        # count^(1/p) / (t^(1/p) phi(t)) <= c_inc / phi(L_c).
        lc = count if count % 2 == 1 else count + 1
        return c_const / phi(lc)

    ex = _maybe_executor(threads)
    try:
        term = _weak_supremum(abs_block, a, p, factor, slack, prune, ex, threads)
    finally:
        if ex is not None:
            ex.shutdown()
    if report is None:
        return NormReport(
            value=term.value, arg_window=Window(term.m, term.N), arg_gamma=term.gamma
        )
    return NormReport(
        value=term.value,
        arg_window=Window(term.m, term.N),
        arg_gamma=term.gamma,
        exact=False,
        tail_bound_factor=report.c_inc,
    )


class QuasiTriangleResult(NamedTuple):
    lhs: float
    rhs: float
    ok: bool


def quasi_triangle_check(x: Sequence, y: Sequence, e: Exponents) -> QuasiTriangleResult:
    """Weak-norm quasi-triangle inequality with constant 2."""
    lhs = weak_morrey_norm(x + y, e).value
    rhs = 2.0 * (weak_morrey_norm(x, e).value + weak_morrey_norm(y, e).value)
    return QuasiTriangleResult(lhs, rhs, lhs <= rhs * (1 + 1e-9))
