"""Inclusion and equivalence checkers with characteristic-sequence witnesses.

The equivalence of pointwise domination between two parameter functions and
domination between the corresponding norms is tested empirically: the
characteristic sequences (indicators of single windows) are the extremal
witnesses, and verdicts always carry the horizon and family they were
computed on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .core import Exponents, Sequence, lp_norm
from .norms import NormReport, gen_morrey_norm, gen_weak_norm, weak_morrey_norm
from .phi import PhiFunction, check_gp, phi_ratio_sup, ratio_is_bounded

_RTOL = 1e-9


def make_characteristic(m0: int, N0: int) -> Sequence:
    """The 0/1 indicator of the window S_{m0,N0}."""
    if N0 < 0:
        raise ValueError(f"window radius must be >= 0, got {N0}")
    return Sequence(offset=m0 - N0, values=(1.0,) * (2 * N0 + 1))


def power_decay_sequence(exponent: float, half_length: int) -> Sequence:
    """Truncation of x_k = |k|^(-exponent), x_0 = 1, to |k| <= half_length."""
    if exponent <= 0:
        raise ValueError(f"exponent must be positive, got {exponent}")
    if half_length < 0:
        raise ValueError(f"half_length must be >= 0, got {half_length}")
    if half_length == 0:
        return Sequence(offset=0, values=(1.0,))
    ks = np.arange(1, half_length + 1, dtype=np.float64)
    tail = ks**-exponent
    vals = np.concatenate([tail[::-1], [1.0], tail])
    return Sequence(offset=-half_length, values=tuple(float(v) for v in vals))


class CharacteristicBounds(NamedTuple):
    """Two-sided bound check for the norm of a characteristic sequence."""

    lower: float
    value: float
    upper: float
    ok: bool


def characteristic_bounds_check(
    phi: PhiFunction,
    p: float,
    m0: int,
    N0: int,
    weak: bool = False,
    horizon: int = 201,
) -> CharacteristicBounds:
    """Check lower <= norm(indicator of S_{m0,N0}) <= C/phi(2N0+1).

    The constant C = max(c_dec, c_inc) is assembled from the monotonicity
    constants at `horizon` (c_dec governs radii below N0, c_inc above).  The
    lower bound is 1/phi(2N0+1) for the strong norm and half that for the
    weak norm.
    """
    t0 = 2 * N0 + 1
    t_check = max(horizon, t0)
    if t_check % 2 == 0:
        t_check += 1
    report = check_gp(phi, p, t_check)
    xi = make_characteristic(m0, N0)
    norm = gen_weak_norm(xi, p, phi) if weak else gen_morrey_norm(xi, p, phi)
    phi0 = phi(t0)
    lower = 1.0 / (2.0 * phi0) if weak else 1.0 / phi0
    upper = max(report.c_dec, report.c_inc) / phi0
    ok = lower <= norm.value * (1 + _RTOL) and norm.value <= upper * (1 + _RTOL)
    return CharacteristicBounds(lower, norm.value, upper, ok)


@dataclass(frozen=True)
class StrictInclusionExample:
    """The |k|^(-1/q) truncation: bounded window norm, divergent l^p sum."""

    sequence: Sequence
    morrey_report: NormReport
    morrey_bound: float
    lp_partial_sum: float


def strict_inclusion_example(p: float, q: float, half_length: int) -> StrictInclusionExample:
    """Witness that the window norm stays below (3 + 2q/(q-p))^(1/p) while
    the l^p partial sums grow without bound."""
    if not (1 <= p < q):
        raise ValueError(f"need 1 <= p < q, got p={p}, q={q}")
    from .norms import morrey_norm

    x = power_decay_sequence(1.0 / q, half_length)
    report = morrey_norm(x, Exponents(p, q))
    bound = (3.0 + 2.0 * q / (q - p)) ** (1.0 / p)
    psum = float(
        np.sum(np.abs(np.asarray(x.values, dtype=np.float64)) ** p)
    )
    return StrictInclusionExample(x, report, bound, psum)


class WeakExampleResult(NamedTuple):
    value: float
    ok: bool


def weak_example_check(p: float, half_length: int) -> WeakExampleResult:
    """Weak norm of the |k|^(-1/p) truncation at p = q, against the bound 3."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    x = power_decay_sequence(1.0 / p, half_length)
    value = weak_morrey_norm(x, Exponents(p, p)).value
    return WeakExampleResult(value, value < 3.0)


@dataclass(frozen=True)
class TestFamily:
    """A labelled collection of finitely supported test sequences."""

    __test__ = False  # not a pytest test class despite the name

    label: str
    members: tuple[tuple[str, Sequence], ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("test family must be nonempty")


def default_family(
    t_max: int,
    n_random: int = 200,
    seed: int = 20230317,
    include_examples: bool = True,
) -> TestFamily:
    """Indicators up to the horizon, random sign/heavy-tail sequences, and
    the two explicit decay truncations."""
    members: list[tuple[str, Sequence]] = []
    for n0 in range((t_max - 1) // 2 + 1):
        members.append((f"indicator(0,{n0})", make_characteristic(0, n0)))
    rng = np.random.default_rng(seed)
    for i in range(n_random):
        length = int(rng.integers(1, 65))
        offset = int(rng.integers(-32, 33))
        if i % 2 == 0:
            vals = rng.choice([-1.0, 1.0], size=length)
        else:
            # heavy-tailed draw, normalized to unit sup norm
            vals = rng.standard_cauchy(size=length)
            peak = np.max(np.abs(vals))
            if peak > 0:
                vals = vals / peak
        members.append((f"random[{i}]", Sequence.of(vals, offset=offset)))
    if include_examples:
        members.append(("decay(1/2)", power_decay_sequence(0.5, 500)))
        members.append(("decay(1)", power_decay_sequence(1.0, 500)))
    return TestFamily(label=f"default(t_max={t_max}, n={len(members)})", members=tuple(members))


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Empirical test of phi2 <~ phi1  <=>  norm(p1,phi1) <~ norm(p2,phi2).

    ``ratio_constant`` is sup phi2/phi1 at the horizon; ``norm_constant``
    the largest norm ratio over the family; ``margin`` the product of the
    tail-bound factors of the two norms (1 for exactly monotone functions).
    When domination fails, ``witnesses`` contains characteristic sequences
    whose norm ratio grows with the window radius.
    """

    ratio_constant: float
    norm_constant: float
    margin: float
    consistent: bool
    dominates: bool
    horizon: int
    family_label: str
    witnesses: tuple[dict, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "ratio_constant": self.ratio_constant,
            "norm_constant": self.norm_constant,
            "margin": self.margin,
            "consistent": self.consistent,
            "dominates": self.dominates,
            "horizon": self.horizon,
            "family_label": self.family_label,
            "witnesses": list(self.witnesses),
        }


def equivalence_test(
    p1: float,
    phi1: PhiFunction,
    p2: float,
    phi2: PhiFunction,
    family: Optional[TestFamily] = None,
    t_max: int = 201,
) -> EquivalenceVerdict:
    """Evaluate both norms on a family and compare against sup phi2/phi1."""
    if p1 > p2:
        raise ValueError(f"need p1 <= p2, got p1={p1}, p2={p2}")
    for phi, p in ((phi1, p1), (phi2, p2)):
        if phi.monotonicity_mode == "almost":
            report = check_gp(phi, p, t_max)
            if not report.member:
                from .phi import GpMembershipError

                raise GpMembershipError(
                    f"{phi.label} failed the admissibility check for p={p} at horizon {t_max}"
                )
    if family is None:
        family = default_family(t_max)
    ratio_constant = phi_ratio_sup(phi1, phi2, t_max)
    dominates = ratio_is_bounded(phi1, phi2, t_max)
    witnesses = []
    norm_constant = 0.0
    margin = 1.0
    margin_seen = False
    for label, x in family.members:
        r1 = gen_morrey_norm(x, p1, phi1)
        r2 = gen_morrey_norm(x, p2, phi2)
        if not margin_seen:
            margin = (r1.tail_bound_factor or 1.0) * (r2.tail_bound_factor or 1.0)
            margin_seen = True
        if r1.value == 0.0 and r2.value == 0.0:
            continue
        ratio = float("inf") if r2.value == 0.0 else r1.value / r2.value
        norm_constant = max(norm_constant, ratio)
        witnesses.append(
            {"label": label, "norm1": r1.value, "norm2": r2.value, "ratio": ratio}
        )
    consistent = norm_constant <= margin * ratio_constant * (1 + _RTOL)
    return EquivalenceVerdict(
        ratio_constant=ratio_constant,
        norm_constant=norm_constant,
        margin=margin,
        consistent=consistent,
        dominates=dominates,
        horizon=t_max,
        family_label=family.label,
        witnesses=tuple(witnesses),
    )


def lp_contraction_holds(x: Sequence, e: Exponents) -> bool:
    """Window norm never exceeds the plain l^p norm."""
    from .norms import morrey_norm

    return morrey_norm(x, e).value <= lp_norm(x, e.p) * (1 + _RTOL)
