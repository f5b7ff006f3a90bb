import random

import pytest

import oracles
from quiverkit.action import (QuiverAction, component_orbits, conjugate_action, is_equivariant,
                              is_free, orbit_constant_weights, orbits, quotient_quiver,
                              validate_action)
from quiverkit.battery import random_action, random_free_action
from quiverkit.constructions import coset_action, semidirect_skew_check
from quiverkit.errors import InvalidInput
from quiverkit.groups import (binary_octahedral, cyclic, generated_subgroup, inversion_action,
                              right_multiplication, symmetric)
from quiverkit.quiver import FiniteQuiver, QuiverMorphism, quiver_isomorphic


def two_loops(w1=1, w2=1):
    return FiniteQuiver.build(1, [(0, 0, w1), (0, 0, w2)])


def swap_action(q):
    return QuiverAction(cyclic(2), q, ((0,), (0,)), ((0, 1), (1, 0)))


def test_trivial_action_valid():
    for g in (cyclic(1), cyclic(3), symmetric(3)):
        q = FiniteQuiver.build(2, [(0, 1), (1, 0), (1, 1)])
        act = QuiverAction.trivial(g, q)
        assert validate_action(act).ok
        orb = orbits(act)
        assert all(len(o) == 1 for o in orb.vertex_orbits + orb.edge_orbits)
        assert is_free(act).vertex_free == (g.order == 1)
        assert component_orbits(act).n_orbits == len(component_orbits(act).components)


def test_swapping_equal_loops_is_valid():
    act = swap_action(two_loops())
    assert validate_action(act).ok
    fr = is_free(act)
    assert not fr.vertex_free and fr.edge_free


def test_swapping_unequal_loops_breaks_measure():
    act = swap_action(two_loops(1, 2))
    rep = validate_action(act)
    assert rep.kinds() == {"measure_invariance"}
    assert not orbit_constant_weights(act)


def test_non_action_detected():
    q = FiniteQuiver.build(3, [(0, 1), (1, 2), (2, 0)])
    # generator of Z3 acting by a transposition: homomorphism law fails
    vp = ((0, 1, 2), (1, 0, 2), (1, 0, 2))
    ep = ((0, 1, 2), (0, 1, 2), (0, 1, 2))
    rep = validate_action(QuiverAction(cyclic(3), q, vp, ep))
    assert {"homomorphism", "src_equivariance"} <= rep.kinds()


def test_non_permutation_rejected():
    q = two_loops()
    with pytest.raises(InvalidInput):
        QuiverAction(cyclic(2), q, ((0,), (0,)), ((0, 1), (0, 0)))


def test_from_generators_completes_and_checks():
    q = FiniteQuiver.build(3, [(0, 1), (1, 2), (2, 0)])
    g = cyclic(3)
    act = QuiverAction.from_generators(g, q, {1: (1, 2, 0)}, {1: (1, 2, 0)})
    assert act.vperm[2] == (2, 0, 1)
    assert validate_action(act).ok
    with pytest.raises(InvalidInput):
        QuiverAction.from_generators(g, q, {1: (1, 2, 0), 2: (1, 2, 0)},
                                     {1: (1, 2, 0), 2: (1, 2, 0)})


def test_free_action_orbits_have_full_size():
    rng = random.Random(5)
    for _ in range(30):
        act = random_free_action(rng)
        orb = orbits(act)
        n = act.group.order
        assert all(len(o) == n for o in orb.vertex_orbits + orb.edge_orbits)
        assert is_free(act).vertex_free and is_free(act).edge_free


def test_binary_octahedral_z3_action():
    g = binary_octahedral()
    z2 = generated_subgroup(g, ["-1"])
    z3 = generated_subgroup(g, ["(-1-i-j-k)/2"])
    act = coset_action(g, z2, right_multiplication(g, g.element("k")), z3, side="left")
    assert is_free(act).vertex_free
    orb = orbits(act)
    assert len(orb.vertex_orbits) == 8
    co = component_orbits(act)
    assert (co.n_components, co.n_orbits) == (12, 4)
    assert len(oracles.orbit_sets(act.vperm, 24)) == 8


def test_quotient_weight_sums_fibre():
    # one vertex, four loops in two Z2-orbits with weights 1 and 3
    q = FiniteQuiver.build(2, [(0, 0, 1), (1, 1, 1), (0, 1, 3), (1, 0, 3)])
    act = QuiverAction(cyclic(2), q, ((0, 1), (1, 0)), ((0, 1, 2, 3), (1, 0, 3, 2)))
    res = quotient_quiver(act)
    assert res.quotient.n_vertices == 1
    assert sorted(res.quotient.weight) == [1, 3]


def test_quotient_by_trivial_group_is_isomorphic():
    rng = random.Random(11)
    for _ in range(20):
        act = random_action(rng)
        triv = QuiverAction.trivial(cyclic(1), act.quiver)
        assert quiver_isomorphic(quotient_quiver(triv).quotient, act.quiver) is not None


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_z2_quotient_of_dihedral_coset_quiver(n):
    rep = semidirect_skew_check(cyclic(n), cyclic(2), inversion_action(cyclic(n), cyclic(2)),
                                [k % 2 for k in range(n)])
    res = quotient_quiver(rep.coset_action)
    assert (res.quotient.n_vertices, res.quotient.n_edges) == (1, n)


def test_equivariance_and_conjugation():
    rng = random.Random(8)
    act = random_free_action(rng, relabel=False)
    vp = list(range(act.quiver.n_vertices))
    ep = list(range(act.quiver.n_edges))
    rng.shuffle(vp)
    rng.shuffle(ep)
    moved = conjugate_action(act, vp, ep)
    assert validate_action(moved).ok
    m = QuiverMorphism(tuple(vp), tuple(ep))
    assert is_equivariant(m, act, moved)
    assert oracles.check_equivariant(vp, ep, act.vperm, act.eperm, moved.vperm, moved.eperm)
