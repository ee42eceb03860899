import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from treecap.dirichlet import b2_norm_sq, is_harmonic_at
from treecap.families import CantorSpec, CombSpec, gen_cantor, gen_comb
from treecap.interpolate import (KeyMismatchError, SeparationError, build_disjoint_family,
                                 cut_point, interpolate_family, landing_points,
                                 max_stopping_sum, maximal_antichains,
                                 random_stopping_region, stopping_sum, weaksim_interpolant)
from treecap.tree import TreeSeq, depth, dist, is_stopping_region

from oracles import all_antichains, separated_seq


def test_landing_points_basic():
    land = landing_points(TreeSeq.from_nodes(["0", "0000"]))
    assert land.xi == {"0": "", "0000": "0"}
    land = landing_points(TreeSeq.from_nodes(["00", "11"]))
    assert land.xi["11"] == ""
    assert land.eta_lower_bound == pytest.approx(2 / 3)
    with pytest.raises(ValueError):
        landing_points([])


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_landing_segments_partition_hull_edges(rnd):
    Z = separated_seq(random.Random(rnd.random()), n=6, max_depth=15)
    land = landing_points(Z)
    edges = []
    for z, xi in land.xi.items():
        assert z.startswith(xi) and xi != z
        edges.extend(z[:j] for j in range(len(xi) + 1, len(z) + 1))
    assert len(edges) == len(set(edges)) == len(Z.with_root().hull) - 1
    c = check_sep(Z)
    # landing lengths are bounded below by the separation
    assert all(2 * land.lengths[z] >= c * depth(z) for z in land.xi)


def check_sep(Z):
    return min(Fraction(dist(a, b), depth(a)) for a in Z for b in Z if a != b)


def test_cut_point_threshold():
    assert cut_point("", "000000000") == "000"
    assert cut_point("0", "0" + "1" * 4) == "011"
    assert cut_point("", "00") == "0"


def test_two_points_on_a_geodesic():
    shallow, deep = "00", "0" * 11
    F = build_disjoint_family(TreeSeq.from_nodes([shallow, deep]), exact=True)
    K = F.members[deep]
    # ramp over the last two thirds of the gap between the points
    assert F.cuts[deep] == "0" * 5
    for j in range(5, 12):
        assert K["0" * j] == Fraction(j - 5, 6)
    assert F.norm_sq[deep] == Fraction(1, 6)
    assert F.members[shallow][shallow] == 1


def check_invariants(F, Z):
    for z in Z:
        for w in Z:
            assert F.members[z].get(w, 0) == (1 if z == w else 0)
    seen = set()
    for s in F.supports.values():
        assert not (s & seen)
        seen |= s
    for z, K in F.members.items():
        omega = F.supports[z] - Z.points
        for x in omega:
            if x and all(n in omega for n in (x[:-1], x + "0", x + "1")):
                assert is_harmonic_at(K, x, tol=1e-10)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_cantor_family_invariants(k):
    Z = gen_cantor(CantorSpec(2, 4, k))
    F = build_disjoint_family(Z)
    check_invariants(F, Z)
    assert F.norm_constant == pytest.approx(7 / 3)


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False))
def test_random_family_invariants(rnd):
    Z = separated_seq(random.Random(rnd.random()), n=6, max_depth=25)
    F = build_disjoint_family(Z)
    check_invariants(F, Z)
    # an antichain never collects more than twice the energy of a member
    for z in Z:
        assert F.stopping_max[z] <= 2 * F.norm_sq[z] + 1e-12


def test_child_of_point_is_rejected():
    with pytest.raises(SeparationError):
        build_disjoint_family(TreeSeq.from_nodes(["0101", "01010"]))


def test_exact_and_float_agree():
    Z = gen_cantor(CantorSpec(2, 4, 2))
    Fe, Ff = build_disjoint_family(Z, exact=True), build_disjoint_family(Z)
    for z in Z:
        for x, v in Fe.members[z].items():
            assert float(v) == pytest.approx(Ff.members[z][x], abs=1e-14)


def test_stopping_sum_basics():
    assert stopping_sum({"0": 1.0}, []) == 0
    assert stopping_sum({"0": -2.0, "1": 1.0}, ["0", "1"]) == 3.0
    with pytest.raises(ValueError):
        stopping_sum({"0": 1.0}, ["0", "01"])


def test_stopping_sum_two_point_extremal():
    from treecap.capacity import gamma
    Z = TreeSeq.from_nodes(["0", "0001", "0010"])
    res = gamma("0", Z)
    assert stopping_sum(res.h, ["00"]) == pytest.approx(res.gamma_plus)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.text("01", min_size=1, max_size=4), st.floats(-3, 3), max_size=9))
def test_max_stopping_sum_matches_enumeration(k):
    brute = max((sum(abs(k[x]) for x in S) for S in all_antichains(k)), default=0)
    assert max_stopping_sum(k) == pytest.approx(brute, abs=1e-12)
    maximal = maximal_antichains(k)
    assert all(is_stopping_region(S) for S in maximal)
    if k:
        assert max(sum(abs(k[x]) for x in S) for S in maximal) == pytest.approx(brute, abs=1e-12)
    S = random_stopping_region(k, random.Random(0))
    assert is_stopping_region(S)


def test_interpolation_exact_and_additive():
    Z = gen_comb(CombSpec(10, 20, 8))
    F = build_disjoint_family(Z)
    zero = interpolate_family(F, {z: 0.0 for z in Z})
    assert all(v == 0 for v in zero.values())
    z1 = Z.nodes[3]
    one_hot = interpolate_family(F, {z: float(z == z1) for z in Z})
    assert {x: v for x, v in one_hot.items() if v} == {x: v for x, v in F.members[z1].items() if v}
    rng = random.Random(5)
    xi = {z: rng.uniform(-2, 2) for z in Z}
    f = interpolate_family(F, xi)
    assert all(f[z] == xi[z] for z in Z)
    expected = sum(xi[z] ** 2 * F.norm_sq[z] for z in Z)
    assert b2_norm_sq(f) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(KeyMismatchError):
        interpolate_family(F, {Z.nodes[0]: 1.0})


def test_weaksim_single_ramp():
    Z = TreeSeq.from_nodes(["0" * 9, "1" * 9])
    W = weaksim_interpolant("0" * 9, Z, sep_constant=Fraction(1, 2), exact=True)
    assert W.branch == "general"
    assert W.stem_top == "0" * 4
    assert W.energy == Fraction(1, 5)
    assert W.f["0" * 9] == 1 and W.f["1" * 9] == 0 and W.f[""] == 0
    assert not W.violations


def test_weaksim_shadow_branch_and_root():
    Z = TreeSeq.from_nodes(["00", "0000000"])
    W = weaksim_interpolant("00", Z, exact=True)
    assert W.branch == "shadow" and W.stem_top == ""
    assert W.f["00"] == 1 and W.f["0000000"] == 0
    with pytest.raises(ValueError):
        weaksim_interpolant("", TreeSeq.from_nodes(["", "0"]))


@pytest.mark.parametrize("N", [2, 3, 4])
def test_weaksim_on_cantor(N):
    Z = gen_cantor(CantorSpec(2, 6, N))
    for z0 in Z:
        W = weaksim_interpolant(z0, Z, exact=True)
        assert W.f[z0] == 1 and W.f[""] == 0
        assert all(W.f[v] == 0 for v in Z if v != z0)
        assert W.constant == depth(z0) * b2_norm_sq(W.f)


def test_weaksim_constant_grows_on_comb():
    ks = []
    for d0 in (5, 10, 20):
        Z = gen_comb(CombSpec(d0, d0 * d0, d0 * d0))
        ks.append(weaksim_interpolant(Z.nodes[0], Z).constant)
    assert ks[0] < ks[1] < ks[2]
