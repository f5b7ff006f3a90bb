"""Quiver constructions: skew products, coset quivers, double-coset quotients,
relation quivers, the principal-bundle construction and its converse.

Haar measures on finite subgroups are unnormalised counting measures, so
every constructed edge carries weight 1 unless it inherits a weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .action import (QuiverAction, is_equivariant, is_free, orbits, quotient_quiver,
                     require_valid, validate_action)
from .errors import ConsistencyError, InvalidInput, PropertyFailure, Report
from .groups import (FiniteGroup, GroupHom, Subgroup, coset_partition, double_cosets,
                     equalizer_subgroup, kernel, make_semidirect, whole_group)
from .quiver import (FiniteQuiver, QuiverMorphism, check_morphism, is_isomorphism,
                     validate_quiver)

# ---------------------------------------------------------------------------
# skew products


def skew_product(q: FiniteQuiver, g: FiniteGroup,
                 kappa: Sequence[int]) -> tuple[FiniteQuiver, QuiverAction]:
    """``Q x_kappa G``: vertex ``(v, x)`` has index ``v*|G| + x``, edge ``(e, x)`` index ``e*|G| + x``.

    ``src(e, x) = (src e, x)`` and ``rng(e, x) = (rng e, x*kappa(e))``.  The
    canonical action is translation of the group coordinate from the left,
    written as a right action: ``(e, x)·h = (e, h^-1 x)``; this is the
    translation that commutes with ``x -> x*kappa(e)`` for nonabelian ``G``.
    """
    kappa = tuple(g.element(k) for k in kappa)
    if len(kappa) != q.n_edges:
        raise InvalidInput("cocycle needs one group element per edge")
    n = g.order
    vertices = tuple(f"({q.vertices[v]},{g.labels[x]})" for v in range(q.n_vertices) for x in range(n))
    edges = tuple(f"({q.edges[e]},{g.labels[x]})" for e in range(q.n_edges) for x in range(n))
    src, rng, wt = [], [], []
    for e in range(q.n_edges):
        for x in range(n):
            src.append(q.src[e] * n + x)
            rng.append(q.rng[e] * n + g.mul(x, kappa[e]))
            wt.append(q.weight[e])
    sq = FiniteQuiver(vertices, edges, tuple(src), tuple(rng), tuple(wt), q.strict)
    vperm, eperm = [], []
    for h in g.elements():
        hi = g.inv(h)
        vperm.append(tuple(v * n + g.mul(hi, x) for v in range(q.n_vertices) for x in range(n)))
        eperm.append(tuple(e * n + g.mul(hi, x) for e in range(q.n_edges) for x in range(n)))
    return sq, QuiverAction(g, sq, tuple(vperm), tuple(eperm))


# ---------------------------------------------------------------------------
# coset quivers


def _element_map(g: FiniteGroup, phi: Sequence[int]) -> tuple[int, ...]:
    phi = tuple(g.element(x) for x in phi)
    if len(phi) != g.order:
        raise InvalidInput("element map needs one image per group element")
    return phi


def coset_quiver(g: FiniteGroup, n: Subgroup, phi: Sequence[int]) -> FiniteQuiver:
    """Vertices ``N\\G``, edges ``G``, ``src(x) = Nx``, ``rng(x) = N phi(x)``, weight 1."""
    phi = _element_map(g, phi)
    part = coset_partition(g, n, "right")
    vertices = tuple(f"N[{g.labels[c[0]]}]" for c in part.cosets)
    return FiniteQuiver(vertices, g.labels,
                        tuple(part.index[x] for x in g.elements()),
                        tuple(part.index[phi[x]] for x in g.elements()),
                        (1,) * g.order, True)


def coset_action(g: FiniteGroup, n: Subgroup, phi: Sequence[int], h: Subgroup,
                 side: str = "right") -> QuiverAction:
    """Action of ``H`` on the coset quiver by translation.

    ``side='right'``: ``x·k = xk`` on edges and ``Nx·k = Nxk``; needs
    ``Nx ∩ xH = {x}`` and ``phi(xk) = phi(x)k``.

    ``side='left'``: ``x·k = k^-1 x``; needs ``k^-1 N x = N k^-1 x`` (so the
    vertex map is well defined), ``k^-1 N x = N x  =>  k = e`` and
    ``phi(k^-1 x) = k^-1 phi(x)``.  Useful when ``N`` is central and ``phi``
    is a right translation, where the right-sided form is not equivariant.

    The action's group is ``h.as_group()``.
    """
    phi = _element_map(g, phi)
    if h.parent != g:
        raise InvalidInput("H must be a subgroup of G")
    part = coset_partition(g, n, "right")
    q = coset_quiver(g, n, phi)
    hg = h.as_group()
    nset = n.elements

    if side == "right":
        for x in g.elements():
            nx = {g.mul(m, x) for m in nset}
            xh = {g.mul(x, k) for k in h.elements}
            if nx & xh != {x}:
                raise InvalidInput("intersection condition Nx ∩ xH = {x} fails", witness=g.labels[x])
        for x in g.elements():
            for k in h.elements:
                if phi[g.mul(x, k)] != g.mul(phi[x], k):
                    raise InvalidInput("phi is not H-equivariant",
                                       witness=(g.labels[x], g.labels[k]))

        def move(x, k):
            return g.mul(x, k)
    elif side == "left":
        for k in h.elements:
            ki = g.inv(k)
            for x in g.elements():
                image = {part.index[g.prod(ki, m, x)] for m in nset}
                if len(image) != 1:
                    raise InvalidInput("left translation is not well defined on N-cosets",
                                       witness=(g.labels[x], g.labels[k]))
                if k != g.identity and part.index[g.mul(ki, x)] == part.index[x]:
                    raise InvalidInput("left translation has a fixed coset",
                                       witness=(g.labels[x], g.labels[k]))
                if phi[g.mul(ki, x)] != g.mul(ki, phi[x]):
                    raise InvalidInput("phi is not H-equivariant",
                                       witness=(g.labels[x], g.labels[k]))

        def move(x, k):
            return g.mul(g.inv(k), x)
    else:
        raise InvalidInput("side must be 'right' or 'left'")

    eperm = tuple(tuple(move(x, k) for x in g.elements()) for k in h.elements)
    vperm = tuple(tuple(part.index[move(c[0], k)] for c in part.cosets) for k in h.elements)
    act = QuiverAction(hg, q, vperm, eperm)
    report = validate_action(act)
    if not report.ok:
        raise ConsistencyError(f"coset action failed validation: {report.violations[0].message}")
    return act


@dataclass
class DoubleCosetQuotient:
    quiver: FiniteQuiver
    morphism: QuiverMorphism          # generic quotient -> explicit double-coset quiver
    generic: FiniteQuiver
    action: QuiverAction


def double_coset_quotient(g: FiniteGroup, n: Subgroup, phi: Sequence[int],
                          h: Subgroup) -> DoubleCosetQuotient:
    """Vertices ``N\\G/H``, edges ``G/H``; ``src(xH) = NxH``, ``rng(xH) = N phi(x) H``.

    The weight of ``xH`` at base ``NyH`` counts ``m in N`` with ``myH = xH``,
    evaluated at the minimal representative ``y`` and checked at all others.
    The result is compared with the generic orbit quotient through an explicit morphism.
    """
    phi = _element_map(g, phi)
    act = coset_action(g, n, phi, h, "right")
    dcs = double_cosets(n, g, h)
    left = coset_partition(g, h, "left")
    src, rng, wt = [], [], []
    for c in left.cosets:
        x = c[0]
        src.append(dcs.index[x])
        rng.append(dcs.index[phi[x]])
        base = dcs.cosets[dcs.index[x]]
        counts = set()
        for y in base:
            counts.add(sum(1 for m in n.elements if left.index[g.mul(m, y)] == left.index[x]))
        if len(counts) != 1:
            raise ConsistencyError("double-coset weight depends on the representative")
        wt.append(counts.pop())
    explicit = FiniteQuiver(
        tuple(f"N[{g.labels[c[0]]}]H" for c in dcs.cosets),
        tuple(f"[{g.labels[c[0]]}]H" for c in left.cosets),
        tuple(src), tuple(rng), tuple(wt), True)
    res = quotient_quiver(act)
    part = coset_partition(g, n, "right")
    orb = orbits(act)
    vmap = tuple(dcs.index[part.cosets[o[0]][0]] for o in orb.vertex_orbits)
    emap = tuple(left.index[o[0]] for o in orb.edge_orbits)
    m = QuiverMorphism(vmap, emap)
    if not is_isomorphism(m, res.quotient, explicit):
        raise PropertyFailure("double-coset quiver is not isomorphic to the generic quotient")
    return DoubleCosetQuotient(explicit, m, res.quotient, act)


# ---------------------------------------------------------------------------
# relation quivers


def relation_quiver(g: FiniteGroup, alpha: GroupHom, beta: GroupHom) -> FiniteQuiver:
    """Vertices ``G``; edges ``{(x, y) : alpha(x) = beta(y)}`` with ``src = x``, ``rng = y``.

    Strict exactly when ``alpha(G)`` lies in ``beta(G)``; otherwise vertices
    with ``beta^-1(alpha(x))`` empty carry the zero measure (relaxed mode).
    """
    for f in (alpha, beta):
        if f.domain != g or f.codomain != g:
            raise InvalidInput("alpha and beta must be endomorphisms of G")
    pairs = [(x, y) for x in g.elements() for y in g.elements() if alpha(x) == beta(y)]
    strict = set(alpha.map) <= set(beta.map)
    return FiniteQuiver(g.labels,
                        tuple(f"({g.labels[x]},{g.labels[y]})" for x, y in pairs),
                        tuple(x for x, _ in pairs), tuple(y for _, y in pairs),
                        (1,) * len(pairs), strict)


def relation_action(g: FiniteGroup, alpha: GroupHom, beta: GroupHom) -> QuiverAction:
    """Diagonal right translation by the equalizer ``A = {a : alpha(a) = beta(a)}``."""
    a = equalizer_subgroup(alpha, beta)
    q = relation_quiver(g, alpha, beta)
    epos = {(q.src[e], q.rng[e]): e for e in range(q.n_edges)}
    vperm = tuple(tuple(g.mul(x, k) for x in g.elements()) for k in a.elements)
    eperm = tuple(tuple(epos[g.mul(q.src[e], k), g.mul(q.rng[e], k)] for e in range(q.n_edges))
                  for k in a.elements)
    return QuiverAction(a.as_group(), q, vperm, eperm)


def relation_edge_count_formula(g: FiniteGroup, alpha: GroupHom, beta: GroupHom) -> int:
    image = set(beta.map)
    return sum(1 for x in g.elements() if alpha(x) in image) * kernel(beta).order


# ---------------------------------------------------------------------------
# principal bundles


@dataclass(frozen=True)
class PrincipalBundleData:
    """A free right ``G``-set ``P`` over the vertices of a base quiver ``F``,
    with a pullback isomorphism ``theta: s*(P) -> r*(P)``.

    ``theta`` maps ``(edge, p)`` with ``src(edge) = proj(p)`` to
    ``(edge, p')`` with ``rng(edge) = proj(p')``.
    """

    group: FiniteGroup
    total: tuple[str, ...]
    pact: tuple[tuple[int, ...], ...]          # pact[g][p] = p·g
    proj: tuple[int, ...]
    theta: Mapping[tuple[int, int], tuple[int, int]] = field(hash=False, compare=True)

    def pullback_s(self, base: FiniteQuiver) -> list[tuple[int, int]]:
        return [(e, p) for e in range(base.n_edges) for p in range(len(self.total))
                if self.proj[p] == base.src[e]]

    def pullback_r(self, base: FiniteQuiver) -> list[tuple[int, int]]:
        return [(e, p) for e in range(base.n_edges) for p in range(len(self.total))
                if self.proj[p] == base.rng[e]]


def validate_bundle(base: FiniteQuiver, b: PrincipalBundleData) -> Report:
    report = Report()
    g = b.group
    np_ = len(b.total)
    if len(b.pact) != g.order or any(sorted(p) != list(range(np_)) for p in b.pact):
        report.add("action", "group does not act by permutations on the total space")
        return report
    if len(b.proj) != np_ or any(not 0 <= v < base.n_vertices for v in b.proj):
        report.add("projection", "projection has the wrong shape")
        return report
    for x in g.elements():
        for y in g.elements():
            if any(b.pact[g.mul(x, y)][p] != b.pact[y][b.pact[x][p]] for p in range(np_)):
                report.add("action", "total-space maps are not a right action",
                           (g.labels[x], g.labels[y]))
    for x in g.elements():
        if x != g.identity:
            for p in range(np_):
                if b.pact[x][p] == p:
                    report.add("free", "action on the total space is not free", (g.labels[x], b.total[p]))
        for p in range(np_):
            if b.proj[b.pact[x][p]] != b.proj[p]:
                report.add("projection", "projection not constant on orbits", b.total[p])
    seen_orbits: dict[int, frozenset] = {}
    for p in range(np_):
        orb = frozenset(b.pact[x][p] for x in g.elements())
        v = b.proj[p]
        if v in seen_orbits and seen_orbits[v] != orb:
            report.add("projection", "two orbits over the same base vertex", base.vertices[v])
        seen_orbits.setdefault(v, orb)
    for v in range(base.n_vertices):
        if v not in seen_orbits:
            report.add("projection", "projection is not onto", base.vertices[v])
    if not report.ok:
        return report
    dom = set(b.pullback_s(base))
    cod = set(b.pullback_r(base))
    keys = set(b.theta)
    if keys != dom:
        missing = sorted(dom - keys)
        extra = sorted(keys - dom)
        report.add("theta_domain", "theta is not defined exactly on s*(P)", (missing or extra)[0])
        return report
    images = [b.theta[k] for k in sorted(dom)]
    if set(images) != cod or len(set(images)) != len(images):
        report.add("theta_bijective", "theta is not a bijection s*(P) -> r*(P)")
    for (e, p), (e2, p2) in sorted(b.theta.items()):
        if e2 != e:
            report.add("theta_projection", "theta moves the edge coordinate", (base.edges[e], b.total[p]))
        for x in g.elements():
            img = b.theta.get((e, b.pact[x][p]))
            if img != (e2, b.pact[x][p2]):
                report.add("theta_equivariance", "theta is not G-equivariant",
                           (base.edges[e], b.total[p], g.labels[x]))
                break
    return report


@dataclass
class BundleQuiver:
    quiver: FiniteQuiver
    action: QuiverAction
    projection: QuiverMorphism          # onto the base quiver
    edges: list[tuple[int, int]]        # edge index -> (base edge, p)


def bundle_quiver(base: FiniteQuiver, b: PrincipalBundleData) -> BundleQuiver:
    """Vertices ``P``, edges ``s*(P)``, ``src(e,p) = p``, ``rng(e,p) = pr2 theta(e,p)``,
    weight inherited from the base edge, action ``(e,p)·g = (e, p·g)``."""
    report = validate_bundle(base, b)
    if not report.ok:
        v = report.violations[0]
        raise InvalidInput(f"invalid bundle data: {v.message}", witness=v.witness)
    pairs = b.pullback_s(base)
    pos = {pe: i for i, pe in enumerate(pairs)}
    q = FiniteQuiver(
        b.total,
        tuple(f"({base.edges[e]},{b.total[p]})" for e, p in pairs),
        tuple(p for _, p in pairs),
        tuple(b.theta[pe][1] for pe in pairs),
        tuple(base.weight[e] for e, _ in pairs),
        base.strict)
    g = b.group
    vperm = b.pact
    eperm = tuple(tuple(pos[e, b.pact[x][p]] for e, p in pairs) for x in g.elements())
    act = QuiverAction(g, q, vperm, eperm)
    proj = QuiverMorphism(b.proj, tuple(e for e, _ in pairs))
    if not check_morphism(proj, q, base).ok:
        raise ConsistencyError("bundle projection is not a quiver morphism")
    return BundleQuiver(q, act, proj, pairs)


def trivial_bundle(base: FiniteQuiver, g: FiniteGroup,
                   kappa: Sequence[int] | None = None) -> PrincipalBundleData:
    """``P = F^0 x G`` with ``theta(e, (s e, x)) = (e, (r e, x*kappa(e)))``.

    Point ``(v, x)`` has index ``v*|G| + x`` and ``G`` acts from the left on
    the fibre coordinate (``(v,x)·h = (v, h^-1 x)``), matching ``skew_product``.
    """
    n = g.order
    kappa = tuple(g.element(k) for k in kappa) if kappa is not None else (g.identity,) * base.n_edges
    total = tuple(f"({base.vertices[v]},{g.labels[x]})" for v in range(base.n_vertices) for x in range(n))
    pact = tuple(tuple(v * n + g.mul(g.inv(h), x) for v in range(base.n_vertices) for x in range(n))
                 for h in g.elements())
    proj = tuple(v for v in range(base.n_vertices) for _ in range(n))
    theta = {}
    for e in range(base.n_edges):
        for x in range(n):
            theta[e, base.src[e] * n + x] = (e, base.rng[e] * n + g.mul(x, kappa[e]))
    return PrincipalBundleData(g, total, pact, proj, theta)


@dataclass
class Classification:
    base: FiniteQuiver
    bundle: PrincipalBundleData
    witness: QuiverMorphism          # bundle_quiver(base, bundle) -> original quiver
    rebuilt: BundleQuiver


def classify_action(act: QuiverAction) -> Classification:
    """Recover ``(F, P, theta)`` from a free action: ``F = Q/G``, ``P = E^0``,
    ``theta = iso_r o iso_s^-1`` with ``iso_s(e) = ([e], src e)``, ``iso_r(e) = ([e], rng e)``."""
    require_valid(act)
    fr = is_free(act)
    if not fr.vertex_free:
        raise InvalidInput("classification needs a vertex-free action", witness=fr.vertex_witness)
    q = act.quiver
    res = quotient_quiver(act)
    iso_s = {e: (res.q1[e], q.src[e]) for e in range(q.n_edges)}
    iso_r = {e: (res.q1[e], q.rng[e]) for e in range(q.n_edges)}
    inv_s = {v: e for e, v in iso_s.items()}
    if len(inv_s) != q.n_edges:
        raise ConsistencyError("edge -> s*(P) is not injective")
    theta = {k: iso_r[e] for k, e in inv_s.items()}
    bundle = PrincipalBundleData(act.group, q.vertices, act.vperm, res.q0, theta)
    rebuilt = bundle_quiver(res.quotient, bundle)
    witness = QuiverMorphism(tuple(range(q.n_vertices)),
                             tuple(inv_s[pe] for pe in rebuilt.edges))
    witness.is_iso = is_isomorphism(witness, rebuilt.quiver, q)
    witness.is_equivariant = is_equivariant(witness, rebuilt.action, act)
    if not (witness.is_iso and witness.is_equivariant):
        raise ConsistencyError("classification witness is not an equivariant isomorphism")
    return Classification(res.quotient, bundle, witness, rebuilt)


# ---------------------------------------------------------------------------
# semidirect products versus skew products


@dataclass
class SemidirectSkewReport:
    group: FiniteGroup
    coset: FiniteQuiver
    coset_action: QuiverAction
    skew: FiniteQuiver
    skew_action: QuiverAction
    psi0: tuple[int, ...]           # skew vertex (1_N, h) -> coset N h
    psi1: tuple[int, ...]           # skew edge (n, h) -> edge n h
    is_isomorphism: bool
    is_equivariant: bool

    @property
    def ok(self) -> bool:
        return self.is_isomorphism and self.is_equivariant


def semidirect_skew_check(n: FiniteGroup, h: FiniteGroup, hact, c: Sequence[int]) -> SemidirectSkewReport:
    """Compare ``Q^phi_{N<G}`` (``G = N x| H``, ``phi(nh) = c(n) h``) with the skew
    product ``Q^e_{N<N} x_c H`` through ``psi1(n, h) = nh``, ``psi0(1_N, h) = Nh``."""
    c = tuple(h.element(x) for x in c)
    if len(c) != n.order:
        raise InvalidInput("c needs one H-element per element of N")
    g, n_sub, h_sub = make_semidirect(n, h, hact)
    nn = n.order
    # G-element a + nn*x is the product a*x, so phi(a*x) = c(a)*x
    phi = tuple(n.identity + nn * h.mul(c[gi % nn], gi // nn) for gi in g.elements())
    cq = coset_quiver(g, n_sub, phi)
    cact = coset_action(g, n_sub, phi, h_sub, "right")
    base = coset_quiver(n, whole_group(n), tuple(n.elements()))
    sq, sact = skew_product(base, h, c)
    part = coset_partition(g, n_sub, "right")
    # skew vertex index: 0*|H| + x ; edge (a, x): a*|H| + x
    psi0 = tuple(part.index[n.identity + nn * x] for x in h.elements())
    psi1 = tuple(a + nn * x for a in n.elements() for x in h.elements())
    m = QuiverMorphism(psi0, psi1)
    iso = is_isomorphism(m, sq, cq)
    # both actions are indexed by H in the same order (h_sub.as_group() mirrors h)
    equi = iso and _same_indexing(h, cact.group) and is_equivariant(m, _regroup(sact, cact.group), cact)
    m.is_equivariant = equi
    return SemidirectSkewReport(g, cq, cact, sq, sact, psi0, psi1, iso, equi)


def _same_indexing(h: FiniteGroup, other: FiniteGroup) -> bool:
    return h.cayley == other.cayley and h.identity == other.identity


def _regroup(act: QuiverAction, g: FiniteGroup) -> QuiverAction:
    return QuiverAction(g, act.quiver, act.vperm, act.eperm)
