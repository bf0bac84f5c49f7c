import numpy as np
import pytest

from morrey import Exponents, Sequence, make_characteristic, morrey_norm, weak_morrey_norm
from morrey.oracle import oracle_morrey_norm, oracle_weak_norm

from conftest import random_sequence

EXPONENTS = [Exponents(1, 1), Exponents(1, 2), Exponents(2, 2), Exponents(2, 4), Exponents(1.5, 3)]


def test_oracle_on_indicator():
    xi = make_characteristic(2, 3)
    assert oracle_morrey_norm(xi, Exponents(1, 2)) == pytest.approx(7 ** 0.5, rel=1e-12)
    assert oracle_morrey_norm(xi, Exponents(2, 4)) == pytest.approx(7 ** 0.25, rel=1e-12)


def test_oracle_on_zero():
    z = Sequence.zero()
    assert oracle_morrey_norm(z, Exponents(1, 2)) == 0.0
    assert oracle_weak_norm(z, Exponents(1, 2)) == 0.0


def test_strong_norm_matches_oracle(rng):
    for i in range(60):
        x = random_sequence(rng, max_len=40, heavy=(i % 2 == 1))
        e = EXPONENTS[i % len(EXPONENTS)]
        assert morrey_norm(x, e).value == pytest.approx(
            oracle_morrey_norm(x, e), rel=1e-9, abs=1e-15
        )


def test_weak_norm_dominates_oracle_with_small_gap(rng):
    # The grid oracle converges from below; the closed form is the supremum.
    for i in range(40):
        x = random_sequence(rng, max_len=30, heavy=(i % 2 == 1))
        e = EXPONENTS[i % len(EXPONENTS)]
        exact = weak_morrey_norm(x, e).value
        grid = oracle_weak_norm(x, e)
        assert grid <= exact * (1 + 1e-12) + 1e-15
        assert exact - grid < 1e-4


def test_oracle_padding_changes_nothing(rng):
    # Extra windows beyond the provably sufficient family never help.
    for _ in range(15):
        x = random_sequence(rng, max_len=20, heavy=True)
        e = Exponents(1, 3)
        assert oracle_morrey_norm(x, e, m_pad=0, N_pad=0) == pytest.approx(
            oracle_morrey_norm(x, e, m_pad=15, N_pad=15), rel=1e-12
        )


def test_oracle_weak_rejects_tiny_grid():
    with pytest.raises(ValueError):
        oracle_weak_norm(Sequence.of([1.0]), Exponents(1, 1), gamma_grid=1)
