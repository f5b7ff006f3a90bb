"""Random fixtures: small groups, random quivers and actions induced from G-sets."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .action import QuiverAction, conjugate_action
from .errors import InvalidInput
from .groups import (FiniteGroup, Subgroup, coset_partition, cyclic, dihedral, direct_product,
                     quaternion8, symmetric, trivial_subgroup)
from .quiver import FiniteQuiver

WEIGHTS = (Fraction(1), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 4), Fraction(5, 3))


def small_groups(max_order: int = 8) -> list[FiniteGroup]:
    makers: list[Callable[[], FiniteGroup]] = [
        *(lambda n=n: cyclic(n) for n in range(1, 9)),
        lambda: direct_product(cyclic(2), cyclic(2)),
        lambda: symmetric(3),
        lambda: dihedral(4),
        lambda: quaternion8(),
        lambda: direct_product(cyclic(2), cyclic(4)),
        lambda: direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
    ]
    return [g for g in (m() for m in makers) if g.order <= max_order]


_GROUP_CACHE: dict[int, list[FiniteGroup]] = {}


def _groups(max_order: int) -> list[FiniteGroup]:
    if max_order not in _GROUP_CACHE:
        _GROUP_CACHE[max_order] = small_groups(max_order)
    return _GROUP_CACHE[max_order]


def random_quiver(rng: random.Random, n_vertices: int, n_edges: int, strict: bool = True,
                  weights: Sequence[Fraction] = WEIGHTS) -> FiniteQuiver:
    """Random weighted multigraph; in strict mode every vertex emits an edge."""
    if strict and n_edges < n_vertices:
        raise InvalidInput("strict random quiver needs at least one edge per vertex")
    srcs = list(range(n_vertices)) if strict else []
    srcs += [rng.randrange(n_vertices) for _ in range(n_edges - len(srcs))]
    rng.shuffle(srcs)
    edges = [(s, rng.randrange(n_vertices), rng.choice(weights)) for s in srcs]
    return FiniteQuiver.build(n_vertices, edges, strict)


def random_relabel(rng: random.Random, q: FiniteQuiver) -> tuple[FiniteQuiver, list[int], list[int]]:
    vp = list(range(q.n_vertices))
    ep = list(range(q.n_edges))
    rng.shuffle(vp)
    rng.shuffle(ep)
    return q.relabel(vp, ep), vp, ep


def induced_action(g: FiniteGroup, stabilisers: Sequence[Subgroup],
                   edge_orbits: Sequence[tuple[int, int, int, Fraction, Subgroup | None]]) -> QuiverAction:
    """Build a quiver with a ``G``-action from orbit data.

    Vertex orbit ``i`` is the coset space ``K_i\\G`` (``K_i = stabilisers[i]``).
    Edge orbit ``(i, j, y, w, L)`` is ``L\\G`` with ``Lx -> src K_i x``,
    ``rng K_j y x`` and weight ``w``; ``L`` (default trivial) must lie in
    ``K_i`` and in ``y^-1 K_j y``.
    """
    parts = [coset_partition(g, k, "right") for k in stabilisers]
    voff = [0]
    for p in parts:
        voff.append(voff[-1] + len(p))
    vlabels = [f"O{i}:{g.labels[c[0]]}" for i, p in enumerate(parts) for c in p.cosets]

    def vertex(i, x):
        return voff[i] + parts[i].index[x]

    src, rng_, wt, elabels = [], [], [], []
    eparts, eoff = [], [0]
    for k, (i, j, y, w, ell) in enumerate(edge_orbits):
        ell = ell or trivial_subgroup(g)
        kj = set(stabilisers[j].elements)
        for l in ell.elements:
            if l not in stabilisers[i] or g.prod(y, l, g.inv(y)) not in kj:
                raise InvalidInput("edge stabiliser does not fix both endpoints", witness=k)
        p = coset_partition(g, ell, "right")
        eparts.append(p)
        eoff.append(eoff[-1] + len(p))
        for c in p.cosets:
            x = c[0]
            src.append(vertex(i, x))
            rng_.append(vertex(j, g.mul(y, x)))
            wt.append(w)
            elabels.append(f"E{k}:{g.labels[x]}")
    q = FiniteQuiver(tuple(vlabels), tuple(elabels), tuple(src), tuple(rng_), tuple(wt), True)
    vperm, eperm = [], []
    for h in g.elements():
        vperm.append(tuple(vertex(i, g.mul(c[0], h)) for i, p in enumerate(parts) for c in p.cosets))
        eperm.append(tuple(eoff[k] + p.index[g.mul(c[0], h)]
                           for k, p in enumerate(eparts) for c in p.cosets))
    return QuiverAction(g, q, tuple(vperm), tuple(eperm))


def random_free_action(rng: random.Random, max_vertices: int = 12, max_edges: int = 24,
                       max_order: int = 8, relabel: bool = True) -> QuiverAction:
    """A free action induced from a free vertex ``G``-set, randomly relabelled."""
    g = rng.choice(_groups(max_order))
    n = g.order
    b = rng.randint(1, max(1, max_vertices // n))
    m = rng.randint(b, max(b, max_edges // n))
    starts = list(range(b)) + [rng.randrange(b) for _ in range(m - b)]
    triv = trivial_subgroup(g)
    edges = [(i, rng.randrange(b), rng.randrange(n), rng.choice(WEIGHTS), None) for i in starts]
    act = induced_action(g, [triv] * b, edges)
    if relabel:
        _, vp, ep = random_relabel(rng, act.quiver)
        act = conjugate_action(act, vp, ep)
    return act


def random_action(rng: random.Random, max_vertices: int = 12, max_edges: int = 24,
                  max_order: int = 8) -> QuiverAction:
    """A valid, possibly non-free action (vertex stabilisers drawn from all subgroups)."""
    from .groups import all_subgroups

    g = rng.choice(_groups(max_order))
    subs = all_subgroups(g)
    stabs: list[Subgroup] = []
    size = 0
    while True:
        k = rng.choice(subs)
        orbit = g.order // k.order
        if size + orbit > max_vertices:
            break
        stabs.append(k)
        size += orbit
        if rng.random() < 0.4:
            break
    if not stabs:
        stabs = [subs[-1]]          # whole group: a single fixed vertex
    edges = []
    budget = max_edges
    for i in range(len(stabs)):
        # every vertex orbit emits at least one edge orbit (strictness)
        for _ in range(1 + (rng.random() < 0.5)):
            j = rng.randrange(len(stabs))
            y = rng.randrange(g.order)
            ell = None
            if rng.random() < 0.5:
                inter = [l for l in stabs[i].elements
                         if g.prod(y, l, g.inv(y)) in stabs[j]]
                ell = Subgroup(g, tuple(inter))
            cost = g.order // (ell.order if ell else 1)
            if cost > budget and edges and any(e[0] == i for e in edges):
                continue
            budget -= cost
            edges.append((i, j, y, rng.choice(WEIGHTS), ell))
    act = induced_action(g, stabs, edges)
    _, vp, ep = random_relabel(rng, act.quiver)
    return conjugate_action(act, vp, ep)


def perturb_weight(rng: random.Random, act: QuiverAction) -> QuiverAction:
    """Change one edge weight; measure invariance breaks iff that edge's orbit is nontrivial."""
    q = act.quiver
    e = rng.randrange(q.n_edges)
    wt = list(q.weight)
    wt[e] = wt[e] + 1
    q2 = FiniteQuiver(q.vertices, q.edges, q.src, q.rng, tuple(wt), q.strict)
    return QuiverAction(act.group, q2, act.vperm, act.eperm)


def random_cocycle(rng: random.Random, q: FiniteQuiver, g: FiniteGroup) -> list[int]:
    return [rng.randrange(g.order) for _ in range(q.n_edges)]


def random_group(rng: random.Random, max_order: int = 8) -> FiniteGroup:
    return rng.choice(_groups(max_order))
