"""Parameter functions on odd integers and their monotonicity constants.

A ``PhiFunction`` maps odd cardinalities t = 2N+1 >= 1 to positive reals.
Built-in families: pure powers t^(-1/q) (exactly monotone), the
log-perturbed family t^(-1/q) (1 + ln t)^beta (stress family with
nontrivial constants), tabulated values loaded from JSON, and arbitrary
callables.

Membership in the admissible class for exponent p (phi almost decreasing
while t^(1/p) phi(t) is almost increasing) is decided *empirically* at a
finite odd horizon; reports always carry the horizon so callers cannot
mistake the verdict for a global proof.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

# Growth tolerance used both to flag non-members (constants still growing
# between half and full horizon) and to detect domination failure.
_GROWTH_RTOL = 1e-6


class HorizonExceededError(ValueError):
    """A tabulated or bounded function was queried beyond its horizon."""


class GpMembershipError(ValueError):
    """The supplied parameter function failed the admissibility check."""


def _check_odd(t: int) -> int:
    t = int(t)
    if t < 1 or t % 2 == 0:
        raise ValueError(f"parameter functions are defined on odd t >= 1, got {t}")
    return t


class PhiFunction:
    """A positive function on odd integers with a declared monotonicity mode.

    ``monotonicity_mode`` is either ``"exact"`` (phi nonincreasing AND
    t^(1/p) phi(t) nondecreasing, declared by the constructor) or
    ``"almost"`` (constants must be estimated via :func:`check_gp`).
    """

    def __init__(
        self,
        evaluator: Callable[[np.ndarray], np.ndarray],
        kind: str,
        monotonicity_mode: str = "almost",
        horizon: Optional[int] = None,
        label: str = "",
    ):
        if monotonicity_mode not in ("exact", "almost"):
            raise ValueError(f"unknown monotonicity mode {monotonicity_mode!r}")
        self._evaluator = evaluator
        self.kind = kind
        self.monotonicity_mode = monotonicity_mode
        self.horizon = horizon  # largest defined odd t, or None for unbounded
        self.label = label or kind

    def __call__(self, t: int) -> float:
        t = _check_odd(t)
        if self.horizon is not None and t > self.horizon:
            raise HorizonExceededError(
                f"{self.label} is only defined up to t={self.horizon}, got {t}"
            )
        v = float(self._evaluator(np.asarray([t], dtype=np.float64))[0])
        if not (v > 0):
            raise ValueError(f"{self.label}({t}) = {v} is not positive")
        return v

    def values_upto(self, t_max: int) -> np.ndarray:
        """phi evaluated at every odd t in [1, t_max]."""
        t_max = _check_odd(t_max)
        if self.horizon is not None and t_max > self.horizon:
            raise HorizonExceededError(
                f"{self.label} is only defined up to t={self.horizon}, got {t_max}"
            )
        ts = np.arange(1, t_max + 1, 2, dtype=np.float64)
        vals = np.asarray(self._evaluator(ts), dtype=np.float64)
        if vals.shape != ts.shape or not np.all(vals > 0):
            raise ValueError(f"{self.label} must be positive on all odd t <= {t_max}")
        return vals

    def __repr__(self) -> str:
        return f"PhiFunction({self.label})"

    # Built-in families -------------------------------------------------

    @classmethod
    def power(cls, q: float) -> "PhiFunction":
        """t^(-1/q); exactly decreasing with t^(1/p) phi nondecreasing for p <= q."""
        if q < 1:
            raise ValueError(f"power exponent must be >= 1, got {q}")
        return cls(
            lambda ts: ts ** (-1.0 / q),
            kind="power",
            monotonicity_mode="exact",
            label=f"power({q:g})",
        )

    @classmethod
    def log_perturbed(cls, q: float, beta: float) -> "PhiFunction":
        """t^(-1/q) (1 + ln t)^beta; almost monotone with nontrivial constants."""
        if q < 1:
            raise ValueError(f"power exponent must be >= 1, got {q}")
        return cls(
            lambda ts: ts ** (-1.0 / q) * (1.0 + np.log(ts)) ** beta,
            kind="log_perturbed",
            monotonicity_mode="almost",
            label=f"log_perturbed({q:g},{beta:g})",
        )

    @classmethod
    def constant(cls, c: float = 1.0) -> "PhiFunction":
        if not c > 0:
            raise ValueError(f"constant must be positive, got {c}")
        return cls(
            lambda ts: np.full_like(ts, float(c)),
            kind="constant",
            monotonicity_mode="almost",
            label=f"constant({c:g})",
        )

    @classmethod
    def tabulated(cls, values: dict[int, float]) -> "PhiFunction":
        """Values for consecutive odd t = 1, 3, ..., T_max; errors beyond T_max."""
        ts = sorted(values)
        if not ts or ts[0] != 1 or ts != list(range(1, ts[-1] + 1, 2)):
            raise ValueError("tabulated values must cover consecutive odd t starting at 1")
        table = np.asarray([float(values[t]) for t in ts], dtype=np.float64)
        if not np.all(table > 0):
            raise ValueError("tabulated values must be positive")

        def ev(xs: np.ndarray) -> np.ndarray:
            idx = ((xs - 1) / 2).astype(int)
            return table[idx]

        return cls(
            ev,
            kind="tabulated",
            monotonicity_mode="almost",
            horizon=ts[-1],
            label=f"tabulated(T={ts[-1]})",
        )

    @classmethod
    def custom(
        cls,
        func: Callable[[int], float],
        monotonicity_mode: str = "almost",
        label: str = "custom",
    ) -> "PhiFunction":
        def ev(ts: np.ndarray) -> np.ndarray:
            return np.asarray([float(func(int(t))) for t in ts], dtype=np.float64)

        return cls(ev, kind="custom", monotonicity_mode=monotonicity_mode, label=label)


def phi_from_json(source: str | dict) -> PhiFunction:
    """Load a tabulated function from a JSON document.

    Expected shape: {"kind": "tabulated", "values": [{"t": 1, "phi": 1.0}, ...]}
    with t odd, ascending, starting at 1.
    """
    doc = json.loads(source) if isinstance(source, str) else source
    if not isinstance(doc, dict) or doc.get("kind") != "tabulated":
        raise ValueError('expected a JSON object with "kind": "tabulated"')
    rows = doc.get("values")
    if not isinstance(rows, list) or not rows:
        raise ValueError('expected a nonempty "values" list')
    table: dict[int, float] = {}
    last = -1
    for row in rows:
        t = int(row["t"])
        if t <= last:
            raise ValueError("tabulated t values must be strictly ascending")
        last = t
        table[t] = float(row["phi"])
    return PhiFunction.tabulated(table)


@dataclass(frozen=True)
class GpReport:
    """Empirical monotonicity constants of phi at a finite odd horizon.

    ``c_dec`` is the smallest C >= 1 with phi(2M+1) >= phi(2N+1)/C for
    M <= N at the horizon; ``c_inc`` the analogue for t^(1/p) phi(t)
    almost increasing; ``c_doubling`` the two-sided ratio bound over
    pairs with 1/2 <= (2M+1)/(2N+1) <= 2.
    """

    p: float
    horizon: int
    c_dec: float
    c_inc: float
    c_doubling: float
    member: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "horizon": self.horizon,
            "c_dec": self.c_dec,
            "c_inc": self.c_inc,
            "c_doubling": self.c_doubling,
            "member": self.member,
        }


def _constants_at(phi: PhiFunction, p: float, t_max: int) -> tuple[float, float]:
    vals = phi.values_upto(t_max)
    c_dec = max(1.0, float(np.max(vals / np.minimum.accumulate(vals))))
    ts = np.arange(1, t_max + 1, 2, dtype=np.float64)
    h = ts ** (1.0 / p) * vals
    c_inc = max(1.0, float(np.max(np.maximum.accumulate(h) / h)))
    return c_dec, c_inc


def _doubling_at(phi: PhiFunction, t_max: int) -> float:
    # Sliding-window min/max over the admissible band t' in [t/2, 2t],
    # monotone deques give O(t_max) overall.
    vals = phi.values_upto(t_max)
    n = len(vals)  # index i holds t = 2i + 1
    best = 1.0
    min_q: deque[int] = deque()
    max_q: deque[int] = deque()
    hi = -1  # last index pushed into the deques
    lo = 0  # current left edge of the band
    for i in range(n):
        t = 2 * i + 1
        # t' <= 2t  ->  index j with 2j+1 <= 2t  ->  j <= t - 1/2
        new_hi = min(n - 1, t - 1)
        if i == 0:
            new_hi = max(new_hi, 0)
        while hi < new_hi:
            hi += 1
            while min_q and vals[min_q[-1]] >= vals[hi]:
                min_q.pop()
            min_q.append(hi)
            while max_q and vals[max_q[-1]] <= vals[hi]:
                max_q.pop()
            max_q.append(hi)
        # t' >= t/2  ->  2j+1 >= t/2  ->  j >= (t/2 - 1)/2
        new_lo = max(0, math.ceil((t / 2 - 1) / 2))
        while lo < new_lo:
            if min_q and min_q[0] < new_lo:
                while min_q and min_q[0] < new_lo:
                    min_q.popleft()
            if max_q and max_q[0] < new_lo:
                while max_q and max_q[0] < new_lo:
                    max_q.popleft()
            lo = new_lo
        band_min = vals[min_q[0]]
        band_max = vals[max_q[0]]
        best = max(best, float(vals[i] / band_min), float(band_max / vals[i]))
    return best


@lru_cache(maxsize=256)
def check_gp(phi: PhiFunction, p: float, t_max: int) -> GpReport:
    """Estimate the monotonicity constants of phi over odd t <= t_max.

    All suprema run over the full odd range including t = 1.  Membership is
    flagged false when either constant is still growing between roughly half
    the horizon and the horizon (the admissibility conditions quantify over
    all N, which is not machine-checkable; a stabilized constant is the
    finite-horizon proxy).
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    t_max = _check_odd(t_max)
    if t_max < 3:
        raise ValueError(f"horizon must be >= 3, got {t_max}")
    c_dec, c_inc = _constants_at(phi, p, t_max)
    t_half = (t_max + 1) // 2
    if t_half % 2 == 0:
        t_half += 1
    member = True
    if t_half >= 3 and t_half < t_max:
        c_dec_h, c_inc_h = _constants_at(phi, p, t_half)
        member = c_dec <= c_dec_h * (1 + _GROWTH_RTOL) and c_inc <= c_inc_h * (
            1 + _GROWTH_RTOL
        )
    return GpReport(
        p=p,
        horizon=t_max,
        c_dec=c_dec,
        c_inc=c_inc,
        c_doubling=_doubling_at(phi, t_max),
        member=member,
    )


def doubling_constant(phi: PhiFunction, t_max: int) -> float:
    """Two-sided ratio bound over odd pairs within a factor 2 of each other."""
    t_max = _check_odd(t_max)
    if t_max < 3:
        raise ValueError(f"horizon must be >= 3, got {t_max}")
    return _doubling_at(phi, t_max)


def phi_ratio_sup(phi1: PhiFunction, phi2: PhiFunction, t_max: int) -> float:
    """sup over odd t <= t_max of phi2(t)/phi1(t): the empirical domination constant."""
    t_max = _check_odd(t_max)
    v1 = phi1.values_upto(t_max)
    v2 = phi2.values_upto(t_max)
    return float(np.max(v2 / v1))


def ratio_is_bounded(phi1: PhiFunction, phi2: PhiFunction, t_max: int) -> bool:
    """Heuristic: does sup phi2/phi1 stabilize between half and full horizon?"""
    t_max = _check_odd(t_max)
    t_half = (t_max + 1) // 2
    if t_half % 2 == 0:
        t_half += 1
    if t_half < 1 or t_half >= t_max:
        return True
    return phi_ratio_sup(phi1, phi2, t_max) <= phi_ratio_sup(phi1, phi2, t_half) * (
        1 + _GROWTH_RTOL
    )
