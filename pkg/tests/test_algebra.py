import random

import pytest

import oracles
from quiverkit.action import QuiverAction
from quiverkit.algebra import (adjacency_matrix, ck_presentation, induced_generator_action,
                               invariant_factors, k_theory, regular_vertices, smith_normal_form)
from quiverkit.battery import random_free_action, random_quiver
from quiverkit.constructions import coset_action, coset_quiver
from quiverkit.groups import (binary_octahedral, cyclic, generated_subgroup, right_multiplication,
                              trivial_subgroup, whole_group)
from quiverkit.quiver import FiniteQuiver


def toeplitz():
    z2 = cyclic(2)
    return coset_quiver(z2, trivial_subgroup(z2), (0, 0))


def cuntz(n):
    g = cyclic(n)
    return coset_quiver(g, whole_group(g), tuple(g.elements()))


def test_adjacency_conventions():
    assert adjacency_matrix(cuntz(4)) == [[4]]
    t = toeplitz()
    assert adjacency_matrix(t) == [[1, 1], [0, 0]]
    q = FiniteQuiver.build(2, [(0, 1, "1/2"), (0, 1, "1/3"), (1, 1)])
    assert adjacency_matrix(q) == [[0, 0], [2, 1]]
    assert adjacency_matrix(q, weighted=True)[1][0] == pytest.approx(5 / 6)


def test_regular_vertices():
    assert regular_vertices(FiniteQuiver.build(1, [(0, 0)])) == [0]
    assert regular_vertices(toeplitz()) == [0]
    assert regular_vertices(cuntz(3)) == [0]


def test_cuntz_presentation():
    pres = ck_presentation(cuntz(3))
    assert len(pres.projections) == 1 and len(pres.isometries) == 3
    (rel,) = pres.range_relations()
    assert len(rel["edges"]) == 3
    assert rel["text"].startswith("p[N[0]] = ")


def test_toeplitz_presentation():
    pres = ck_presentation(toeplitz())
    assert len(pres.isometries) == 2
    assert len(pres.range_relations()) == 1
    assert len(pres.source_relations()) == 2
    assert pres.range_relations()[0]["vertex"] == "N[0]"


def test_weight_notes():
    q = FiniteQuiver.build(1, [(0, 0, "1/2"), (0, 0)])
    notes = ck_presentation(q).weight_notes
    assert len(notes) == 1 and "1/2" in notes[0]


def test_induced_generator_action():
    q = FiniteQuiver.build(1, [(0, 0), (0, 0)])
    triv = induced_generator_action(QuiverAction.trivial(cyclic(3), q))
    assert all(p == (0,) for p in triv.projections)
    assert all(s == (0, 1) for s in triv.isometries)

    rng = random.Random(2)
    act = random_free_action(rng)
    ga = induced_generator_action(act)
    e = act.group.identity
    for x in act.group.elements():
        if x != e:
            assert all(ga.projections[x][v] != v for v in range(act.quiver.n_vertices))
            assert all(ga.isometries[x][i] != i for i in range(act.quiver.n_edges))


def test_generator_action_on_binary_octahedral_blocks():
    g = binary_octahedral()
    act = coset_action(g, generated_subgroup(g, ["-1"]), right_multiplication(g, g.element("k")),
                       generated_subgroup(g, ["(-1-i-j-k)/2"]), side="left")
    ga = induced_generator_action(act)
    assert len(ga.projections) == 3
    assert len(ga.to_json(act)) == 3


@pytest.mark.parametrize("m, expected", [
    ([[0]], []),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[1, 0], [0, 1]], [1, 1]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[0, 0, 0], [0, 0, 0]], []),
])
def test_smith_examples(m, expected):
    assert invariant_factors(m) == expected


def test_smith_identity():
    s, d, t = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert d == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7])
def test_cuntz_k_theory(n):
    k = k_theory(cuntz(n))
    assert k.k0_free_rank == 0 and k.k1_free_rank == 0
    assert k.k0_torsion == ((n - 1,) if n > 2 else ())


def test_toeplitz_k_theory():
    k = k_theory(toeplitz())
    assert (k.k0_free_rank, k.k0_torsion, k.k1_free_rank) == (1, (), 0)


def test_edgeless_relaxed_k_theory():
    q = FiniteQuiver.build(3, [], strict=False)
    k = k_theory(q)
    assert (k.k0_free_rank, k.k0_torsion, k.k1_free_rank) == (3, (), 0)


def test_k_theory_matches_sympy():
    rng = random.Random(17)
    for _ in range(60):
        q = random_quiver(rng, rng.randint(1, 6), rng.randint(0, 12), strict=False)
        k = k_theory(q)
        assert (k.k0_free_rank, k.k0_torsion, k.k1_free_rank) == oracles.k_theory_oracle(q)
