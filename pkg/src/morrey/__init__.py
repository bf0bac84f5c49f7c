"""Exact discrete Morrey norms for finitely supported sequences.

Strong and weak window-supremum norms, classical (exponent pair) and
generalized (parameter function on odd window cardinalities), plus
inclusion/equivalence checkers and brute-force oracles.
"""

from .core import (
    Exponents,
    Sequence,
    Window,
    enumeration_bound,
    lp_norm,
    support_bounds,
    window_psum,
)
from .inclusion import (
    CharacteristicBounds,
    EquivalenceVerdict,
    StrictInclusionExample,
    TestFamily,
    WeakExampleResult,
    characteristic_bounds_check,
    default_family,
    equivalence_test,
    make_characteristic,
    power_decay_sequence,
    strict_inclusion_example,
    weak_example_check,
)
from .norms import (
    NormReport,
    QuasiTriangleResult,
    gen_morrey_norm,
    gen_weak_norm,
    morrey_norm,
    morrey_window_quantity,
    quasi_triangle_check,
    weak_morrey_norm,
    weak_window_quantity,
)
from .phi import (
    GpMembershipError,
    GpReport,
    HorizonExceededError,
    PhiFunction,
    check_gp,
    doubling_constant,
    phi_from_json,
    phi_ratio_sup,
)

__version__ = "0.1.0"

__all__ = [
    "Exponents",
    "Sequence",
    "Window",
    "enumeration_bound",
    "lp_norm",
    "support_bounds",
    "window_psum",
    "NormReport",
    "QuasiTriangleResult",
    "morrey_window_quantity",
    "morrey_norm",
    "weak_window_quantity",
    "weak_morrey_norm",
    "gen_morrey_norm",
    "gen_weak_norm",
    "quasi_triangle_check",
    "PhiFunction",
    "GpReport",
    "GpMembershipError",
    "HorizonExceededError",
    "check_gp",
    "doubling_constant",
    "phi_from_json",
    "phi_ratio_sup",
    "CharacteristicBounds",
    "EquivalenceVerdict",
    "StrictInclusionExample",
    "TestFamily",
    "WeakExampleResult",
    "characteristic_bounds_check",
    "default_family",
    "equivalence_test",
    "make_characteristic",
    "power_decay_sequence",
    "strict_inclusion_example",
    "weak_example_check",
    "__version__",
]
