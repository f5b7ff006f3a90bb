"""Right actions of finite groups on finite quivers.

``vperm[g][v]`` is ``v·g`` and ``eperm[g][e]`` is ``e·g``.  Being a right
action means ``v·(gh) = (v·g)·h``, i.e. ``vperm[gh] = vperm[h] o vperm[g]``.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ConsistencyError, InvalidInput, Report
from .groups import FiniteGroup
from .quiver import Components, FiniteQuiver, QuiverMorphism, connected_components


def _is_perm(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


@dataclass(frozen=True)
class QuiverAction:
    group: FiniteGroup
    quiver: FiniteQuiver
    vperm: tuple[tuple[int, ...], ...]
    eperm: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "vperm", tuple(tuple(int(x) for x in p) for p in self.vperm))
        object.__setattr__(self, "eperm", tuple(tuple(int(x) for x in p) for p in self.eperm))
        g, q = self.group, self.quiver
        if len(self.vperm) != g.order or len(self.eperm) != g.order:
            raise InvalidInput("need one vertex and one edge permutation per group element")
        for x in g.elements():
            if not _is_perm(self.vperm[x], q.n_vertices):
                raise InvalidInput("vertex map is not a permutation", witness=g.labels[x])
            if not _is_perm(self.eperm[x], q.n_edges):
                raise InvalidInput("edge map is not a permutation", witness=g.labels[x])

    def v(self, v: int, g: int) -> int:
        return self.vperm[g][v]

    def e(self, e: int, g: int) -> int:
        return self.eperm[g][e]

    @classmethod
    def trivial(cls, group: FiniteGroup, quiver: FiniteQuiver) -> "QuiverAction":
        return cls(group, quiver,
                   (tuple(range(quiver.n_vertices)),) * group.order,
                   (tuple(range(quiver.n_edges)),) * group.order)

    @classmethod
    def from_generators(cls, group: FiniteGroup, quiver: FiniteQuiver,
                        vgens: Mapping[int, Sequence[int]],
                        egens: Mapping[int, Sequence[int]]) -> "QuiverAction":
        """Complete permutations given on some elements through the Cayley table.

        Every supplied permutation is checked against the completed one.
        """
        nv, ne = quiver.n_vertices, quiver.n_edges
        gens = sorted(set(vgens) | set(egens))
        for x in gens:
            if x not in vgens or x not in egens:
                raise InvalidInput("each element needs both a vertex and an edge permutation",
                                   witness=group.labels[x])
            if not _is_perm(vgens[x], nv) or not _is_perm(egens[x], ne):
                raise InvalidInput("supplied map is not a permutation", witness=group.labels[x])
        vp: dict[int, tuple[int, ...]] = {group.identity: tuple(range(nv))}
        ep: dict[int, tuple[int, ...]] = {group.identity: tuple(range(ne))}
        queue = deque([group.identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = group.mul(x, s)
                # v·(xs) = (v·x)·s
                vy = tuple(vgens[s][vp[x][v]] for v in range(nv))
                ey = tuple(egens[s][ep[x][e]] for e in range(ne))
                if y in vp:
                    if vp[y] != vy or ep[y] != ey:
                        raise InvalidInput("supplied permutations do not define an action",
                                           witness=group.labels[y])
                    continue
                vp[y], ep[y] = vy, ey
                queue.append(y)
        if len(vp) != group.order:
            raise InvalidInput("supplied elements do not generate the group")
        return cls(group, quiver, tuple(vp[x] for x in group.elements()),
                   tuple(ep[x] for x in group.elements()))


def validate_action(act: QuiverAction) -> Report:
    """Homomorphism law, equivariance of src/rng, and invariance of the source measures."""
    g, q = act.group, act.quiver
    report = Report()
    e0 = g.identity
    if act.vperm[e0] != tuple(range(q.n_vertices)) or act.eperm[e0] != tuple(range(q.n_edges)):
        report.add("identity", "identity element does not act trivially", g.labels[e0])
    for x in g.elements():
        for y in g.elements():
            xy = g.mul(x, y)
            vx, vy, vxy = act.vperm[x], act.vperm[y], act.vperm[xy]
            if any(vxy[v] != vy[vx[v]] for v in range(q.n_vertices)):
                report.add("homomorphism", "vertex maps do not compose as a right action",
                           (g.labels[x], g.labels[y]))
            ex, ey, exy = act.eperm[x], act.eperm[y], act.eperm[xy]
            if any(exy[e] != ey[ex[e]] for e in range(q.n_edges)):
                report.add("homomorphism", "edge maps do not compose as a right action",
                           (g.labels[x], g.labels[y]))
    for x in g.elements():
        vp, ep = act.vperm[x], act.eperm[x]
        for e in range(q.n_edges):
            f = ep[e]
            if q.src[f] != vp[q.src[e]]:
                report.add("src_equivariance", "source map not equivariant", (g.labels[x], q.edges[e]))
            if q.rng[f] != vp[q.rng[e]]:
                report.add("rng_equivariance", "range map not equivariant", (g.labels[x], q.edges[e]))
            if q.weight[f] != q.weight[e]:
                report.add("measure_invariance", "source measure not invariant",
                           (g.labels[x], q.edges[e]))
    return report


def measure_invariant(act: QuiverAction) -> bool:
    return "measure_invariance" not in validate_action(act).kinds()


def require_valid(act: QuiverAction) -> None:
    report = validate_action(act)
    if not report.ok:
        v = report.violations[0]
        raise InvalidInput(f"invalid action: {v.message}", witness=v.witness)


@dataclass
class Freeness:
    vertex_free: bool
    edge_free: bool
    vertex_witness: tuple[int, int] | None = None    # (g, v) with v·g = v, g != e
    edge_witness: tuple[int, int] | None = None

    def to_json(self, act: QuiverAction) -> dict:
        g, q = act.group, act.quiver
        vw = self.vertex_witness
        ew = self.edge_witness
        return {
            "vertex_free": self.vertex_free,
            "edge_free": self.edge_free,
            "vertex_witness": None if vw is None else [g.labels[vw[0]], q.vertices[vw[1]]],
            "edge_witness": None if ew is None else [g.labels[ew[0]], q.edges[ew[1]]],
        }


def is_free(act: QuiverAction) -> Freeness:
    g = act.group
    vw = ew = None
    for x in g.elements():
        if x == g.identity:
            continue
        if vw is None:
            fixed = [v for v, w in enumerate(act.vperm[x]) if v == w]
            if fixed:
                vw = (x, fixed[0])
        if ew is None:
            fixed = [e for e, f in enumerate(act.eperm[x]) if e == f]
            if fixed:
                ew = (x, fixed[0])
    return Freeness(vw is None, ew is None, vw, ew)


@dataclass
class Orbits:
    vertex_orbits: list[tuple[int, ...]]
    edge_orbits: list[tuple[int, ...]]
    vertex_orbit_of: tuple[int, ...]
    edge_orbit_of: tuple[int, ...]


def _orbit_partition(perms: Sequence[Sequence[int]], n: int) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    of = [-1] * n
    orbits = []
    for x in range(n):           # ascending => labelled by minimal member
        if of[x] >= 0:
            continue
        orb = sorted({p[x] for p in perms})
        for y in orb:
            of[y] = len(orbits)
        orbits.append(tuple(orb))
    return orbits, tuple(of)


def orbits(act: QuiverAction) -> Orbits:
    vo, vof = _orbit_partition(act.vperm, act.quiver.n_vertices)
    eo, eof = _orbit_partition(act.eperm, act.quiver.n_edges)
    return Orbits(vo, eo, vof, eof)


def orbit_constant_weights(act: QuiverAction) -> bool:
    """Weights constant on every edge orbit (the finite form of measure invariance)."""
    q = act.quiver
    return all(len({q.weight[e] for e in orb}) == 1 for orb in orbits(act).edge_orbits)


@dataclass
class QuotientResult:
    quotient: FiniteQuiver
    q0: tuple[int, ...]
    q1: tuple[int, ...]

    def projection(self) -> QuiverMorphism:
        return QuiverMorphism(self.q0, self.q1)


def quotient_quiver(act: QuiverAction) -> QuotientResult:
    """Orbit quiver; the weight of ``[e]`` is the mass the source measure at a
    representative ``v`` gives to the orbit ``[e]``, checked for every representative."""
    q = act.quiver
    orb = orbits(act)
    vof, eof = orb.vertex_orbit_of, orb.edge_orbit_of
    src, rng, wt = [], [], []
    for k, eo in enumerate(orb.edge_orbits):
        rep = eo[0]
        s_orbit = vof[q.src[rep]]
        r_orbit = vof[q.rng[rep]]
        masses: dict[int, Fraction] = defaultdict(Fraction)
        for e in eo:
            if vof[q.src[e]] != s_orbit or vof[q.rng[e]] != r_orbit:
                raise ConsistencyError("edge orbit does not project to a single source/range orbit")
            masses[q.src[e]] += q.weight[e]
        base = orb.vertex_orbits[s_orbit]
        values = {masses.get(v, Fraction(0)) for v in base}
        if len(values) != 1:
            raise ConsistencyError(f"quotient weight of edge orbit {k} depends on the representative")
        src.append(s_orbit)
        rng.append(r_orbit)
        wt.append(masses[base[0]])
    quotient = FiniteQuiver(
        tuple(f"orb({q.vertices[o[0]]})" for o in orb.vertex_orbits),
        tuple(f"orb({q.edges[o[0]]})" for o in orb.edge_orbits),
        tuple(src), tuple(rng), tuple(wt), q.strict)
    return QuotientResult(quotient, vof, eof)


@dataclass
class ComponentOrbits:
    components: Components
    perms: tuple[tuple[int, ...], ...]     # perms[g][c] = component of (c·g)
    orbits: list[tuple[int, ...]]

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_orbits(self) -> int:
        return len(self.orbits)


def component_orbits(act: QuiverAction) -> ComponentOrbits:
    comps = connected_components(act.quiver)
    vc = comps.vertex_component
    perms = []
    for x in act.group.elements():
        p = []
        for c, vs in enumerate(comps.vertex_sets):
            images = {vc[act.vperm[x][v]] for v in vs}
            if len(images) != 1:
                raise ConsistencyError("group element splits a connected component")
            p.append(images.pop())
        perms.append(tuple(p))
    orbs, _ = _orbit_partition(perms, len(comps))
    return ComponentOrbits(comps, tuple(perms), orbs)


def is_equivariant(m: QuiverMorphism, a1: QuiverAction, a2: QuiverAction) -> bool:
    """``m(x·g) = m(x)·g`` on vertices and edges; both actions must be by the same group."""
    if a1.group != a2.group:
        raise InvalidInput("equivariance needs actions of the same group")
    for x in a1.group.elements():
        if any(m.vmap[a1.vperm[x][v]] != a2.vperm[x][m.vmap[v]] for v in range(len(m.vmap))):
            return False
        if any(m.emap[a1.eperm[x][e]] != a2.eperm[x][m.emap[e]] for e in range(len(m.emap))):
            return False
    return True


def conjugate_action(act: QuiverAction, vperm: Sequence[int], eperm: Sequence[int]) -> QuiverAction:
    """Transport the action along a relabelling (``FiniteQuiver.relabel`` conventions)."""
    q2 = act.quiver.relabel(vperm, eperm)
    vinv = [0] * len(vperm)
    for v, w in enumerate(vperm):
        vinv[w] = v
    einv = [0] * len(eperm)
    for e, f in enumerate(eperm):
        einv[f] = e
    vp = tuple(tuple(vperm[p[vinv[w]]] for w in range(len(vperm))) for p in act.vperm)
    ep = tuple(tuple(eperm[p[einv[f]]] for f in range(len(eperm))) for p in act.eperm)
    return QuiverAction(act.group, q2, vp, ep)
