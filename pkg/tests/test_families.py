import math
from fractions import Fraction

import pytest

from treecap.capacity import cap_recursive
from treecap.families import (CantorSpec, CombSpec, LevelCollisionError, SpecError,
                              delta_n, delta_n_iterated, gamma_inf, gamma_n,
                              gamma_sequence, gen_cantor, gen_comb, gen_nested,
                              phi_beta, total_mass)
from treecap.interpolate import landing_points
from treecap.tree import depth


def test_comb_layout():
    Z = gen_comb(CombSpec(10, 100, 100))
    assert len(Z) == 101
    z0 = Z.nodes[0]
    assert depth(z0) == 10
    assert max(len(z) for z in Z) + 1 == 10 + 100 + 100
    with pytest.raises(SpecError):
        gen_comb(CombSpec(0, 1, 1))


def test_comb_landing_points():
    spec = CombSpec(5, 6, 3)
    Z = gen_comb(spec)
    z0 = Z.nodes[0]
    land = landing_points(Z)
    for n in range(1, 7):
        tooth = z0 + "0" * n + "1" + "0" * 2
        # the stem below w_{n-1} is first covered by tooth n itself
        expected = z0 if n == 1 else z0 + "0" * (n - 1)
        assert land.xi[tooth] == expected


def test_cantor_counts_and_depths():
    Z = gen_cantor(CantorSpec(2, 4, 3))
    assert len(Z) == 1 + 2 + 4 + 8
    assert sorted({depth(z) for z in Z}) == [4, 8, 16, 32]
    assert total_mass(Z) == 4 * Fraction(1, 4)


def test_cantor_rational_parameters():
    spec = CantorSpec("3/2", 5, 3)
    assert spec.levels() == [5, 7, 11, 16]
    with pytest.raises(LevelCollisionError):
        CantorSpec("11/10", 2, 3).levels()
    with pytest.raises(SpecError):
        CantorSpec(1, 4, 2).levels()


def test_nested_validation():
    W = gen_nested([(8, 2), (64, 4)])
    assert len(W) == 7 + 31
    with pytest.raises(SpecError):
        gen_nested([(4, 3)])


def test_phi_and_gamma_sequence():
    beta = Fraction(1, 4)
    assert phi_beta(beta, 0) == Fraction(1, 5)
    seq = gamma_sequence(beta, 50)
    assert all(a < b for a, b in zip(seq, seq[1:]))
    assert seq[2] == gamma_n(beta, 2) == Fraction(9, 29)
    assert abs(gamma_n(0.25, 200) - gamma_inf(0.25)) < 1e-12


def test_delta_closed_form_matches_iteration():
    for N in (1, 10, 100, 1000):
        assert abs(delta_n(0.01, N) - delta_n_iterated(0.01, N)) < 1e-14


@pytest.mark.parametrize("b", [40, 100, 400])
def test_sandwich(b):
    beta = 1 / b
    for N in (5, 50, b):
        assert delta_n(beta, N) < gamma_n(beta, N) < gamma_inf(beta)


def test_delta_beats_inverse_sqrt():
    N = b = 2500
    assert delta_n(1 / b, N) > 1 / (12 * math.sqrt(N))


def test_comb_capacity_is_continued_fraction():
    for N in (1, 5, 20):
        Z = gen_comb(CombSpec(7, N, 4))
        z0 = Z.nodes[0]
        assert cap_recursive(z0, [w for w in Z if w != z0], exact=True) == gamma_n(Fraction(1, 4), N)
