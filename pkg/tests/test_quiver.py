import random
from fractions import Fraction

import pytest

import oracles
from quiverkit.battery import random_quiver, random_relabel
from quiverkit.constructions import coset_quiver
from quiverkit.errors import InvalidInput
from quiverkit.groups import cyclic, trivial_subgroup
from quiverkit.quiver import (FiniteQuiver, QuiverMorphism, check_morphism, connected_components,
                              identity_morphism, is_isomorphism, quiver_isomorphic, validate_quiver)


def test_single_loop_is_valid():
    q = FiniteQuiver.build(1, [(0, 0)])
    assert validate_quiver(q).ok


def test_empty_source_fibre_strict_vs_relaxed():
    q = FiniteQuiver.build(2, [(0, 1)], strict=False)
    rep = validate_quiver(q, strict=True)
    assert not rep.ok
    assert rep.kinds() == {"empty_source_fibre"}
    assert rep.violations[0].witness == "v1"
    relaxed = validate_quiver(q, strict=False)
    assert relaxed.ok and relaxed.notes


def test_strict_mode_reports_sourceless_vertex():
    q = FiniteQuiver.build(2, [(0, 1)], strict=True)
    assert q.sourceless_vertices() == [1]
    assert "empty_source_fibre" in validate_quiver(q).kinds()


@pytest.mark.parametrize("w", [0, -1, "0/3", "-2/5"])
def test_nonpositive_weights_reported(w):
    q = FiniteQuiver.build(1, [(0, 0, w)])
    rep = validate_quiver(q)
    assert rep.kinds() == {"nonpositive_weight"}
    assert rep.violations[0].witness == "e0"


def test_weights_are_exact():
    q = FiniteQuiver.build(1, [(0, 0, "2/4"), (0, 0, Fraction(1, 3))])
    assert q.weight == (Fraction(1, 2), Fraction(1, 3))
    with pytest.raises(InvalidInput):
        FiniteQuiver.build(1, [(0, 0, 0.5)])


def test_toeplitz_coset_quiver_shape():
    z2 = cyclic(2)
    q = coset_quiver(z2, trivial_subgroup(z2), (0, 0))
    assert validate_quiver(q).ok
    assert (q.n_vertices, q.n_edges) == (2, 2)
    assert set(q.rng) == {0}


def test_self_isomorphism_is_identity_shaped():
    rng = random.Random(1)
    q = random_quiver(rng, 5, 9)
    m = quiver_isomorphic(q, q)
    assert m is not None and is_isomorphism(m, q, q)
    assert is_isomorphism(identity_morphism(q), q, q)


def test_weight_mismatch_blocks_isomorphism():
    a = FiniteQuiver.build(1, [(0, 0, 1)])
    b = FiniteQuiver.build(1, [(0, 0, 2)])
    assert quiver_isomorphic(a, b) is None
    assert not oracles.brute_isomorphic(a, b)


def test_relabel_found_and_checked():
    rng = random.Random(7)
    for _ in range(50):
        q = random_quiver(rng, rng.randint(1, 8), rng.randint(8, 16))
        r, vp, ep = random_relabel(rng, q)
        m = quiver_isomorphic(q, r)
        assert m is not None
        assert oracles.check_iso_map(m.vmap, m.emap, q, r)
        m2 = quiver_isomorphic(r, q)
        assert oracles.check_iso_map(m2.vmap, m2.emap, r, q)


def test_morphism_checks():
    q = FiniteQuiver.build(2, [(0, 1), (1, 0)])
    swap = QuiverMorphism((1, 0), (1, 0))
    assert check_morphism(swap, q, q).ok
    bad = QuiverMorphism((0, 0), (0, 1))
    assert not check_morphism(bad, q, q).ok
    assert not is_isomorphism(bad, q, q)
    assert is_isomorphism(swap.compose(swap), q, q)
    assert swap.inverse() == swap


def test_components_against_oracle():
    rng = random.Random(3)
    for _ in range(40):
        q = random_quiver(rng, rng.randint(1, 12), rng.randint(0, 14), strict=False)
        comps = connected_components(q)
        assert len(comps) == oracles.component_count(q.n_vertices, q.src, q.rng)
        assert sum(c.n_vertices for c in comps.quivers) == q.n_vertices
        assert sum(c.n_edges for c in comps.quivers) == q.n_edges
        # ordered by minimal vertex
        mins = [min(vs) for vs in comps.vertex_sets]
        assert mins == sorted(mins)


def test_connected_quiver_single_component():
    q = FiniteQuiver.build(3, [(0, 1), (1, 2), (2, 0)])
    assert len(connected_components(q)) == 1
