"""Finite quivers with counting-style weighted source measures.

The source measure at ``v`` gives mass ``weight[e]`` to every edge ``e``
with ``src[e] == v``; a finite quiver is therefore a directed multigraph
with a positive rational on each edge.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInput, Report


def as_fraction(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, bool):
        raise InvalidInput(f"bad weight {w!r}")
    if isinstance(w, (int, str)):
        try:
            return Fraction(w)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad weight {w!r}: {exc}") from None
    raise InvalidInput(f"weights must be exact rationals, got {type(w).__name__}")


@dataclass(frozen=True)
class FiniteQuiver:
    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    src: tuple[int, ...]
    rng: tuple[int, ...]
    weight: tuple[Fraction, ...]
    strict: bool = True

    def __post_init__(self):
        for name in ("vertices", "edges"):
            object.__setattr__(self, name, tuple(str(x) for x in getattr(self, name)))
        object.__setattr__(self, "src", tuple(int(x) for x in self.src))
        object.__setattr__(self, "rng", tuple(int(x) for x in self.rng))
        object.__setattr__(self, "weight", tuple(as_fraction(w) for w in self.weight))
        ne, nv = len(self.edges), len(self.vertices)
        if not (len(self.src) == len(self.rng) == len(self.weight) == ne):
            raise InvalidInput("src, rng and weight need one entry per edge")
        if len(set(self.vertices)) != nv:
            raise InvalidInput("vertex labels must be unique")
        if len(set(self.edges)) != ne:
            raise InvalidInput("edge labels must be unique")
        for e in range(ne):
            if not (0 <= self.src[e] < nv and 0 <= self.rng[e] < nv):
                raise InvalidInput("edge endpoint out of range", witness=self.edges[e])

    @classmethod
    def build(cls, n_vertices: int, edges: Iterable[tuple], strict: bool = True,
              vertex_labels: Sequence[str] | None = None) -> "FiniteQuiver":
        """Convenience constructor from ``(src, rng[, weight])`` triples."""
        src, rng, wt = [], [], []
        for item in edges:
            s, r, *rest = item
            src.append(s)
            rng.append(r)
            wt.append(rest[0] if rest else 1)
        labels = vertex_labels or [f"v{i}" for i in range(n_vertices)]
        return cls(tuple(labels), tuple(f"e{i}" for i in range(len(src))),
                   tuple(src), tuple(rng), tuple(wt), strict)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def out_edges(self, v: int) -> list[int]:
        return [e for e in range(self.n_edges) if self.src[e] == v]

    def in_edges(self, v: int) -> list[int]:
        return [e for e in range(self.n_edges) if self.rng[e] == v]

    def sourceless_vertices(self) -> list[int]:
        """Vertices with an empty source fibre, i.e. zero measure."""
        has = set(self.src)
        return [v for v in range(self.n_vertices) if v not in has]

    def with_strict(self, strict: bool) -> "FiniteQuiver":
        return FiniteQuiver(self.vertices, self.edges, self.src, self.rng, self.weight, strict)

    def relabel(self, vperm: Sequence[int], eperm: Sequence[int]) -> "FiniteQuiver":
        """Move vertex ``v`` to position ``vperm[v]`` and edge ``e`` to ``eperm[e]``."""
        nv, ne = self.n_vertices, self.n_edges
        vl, el = [None] * nv, [None] * ne
        src, rng, wt = [0] * ne, [0] * ne, [None] * ne
        for v in range(nv):
            vl[vperm[v]] = self.vertices[v]
        for e in range(ne):
            k = eperm[e]
            el[k] = self.edges[e]
            src[k] = vperm[self.src[e]]
            rng[k] = vperm[self.rng[e]]
            wt[k] = self.weight[e]
        return FiniteQuiver(tuple(vl), tuple(el), tuple(src), tuple(rng), tuple(wt), self.strict)


def validate_quiver(q: FiniteQuiver, strict: bool | None = None) -> Report:
    strict = q.strict if strict is None else strict
    report = Report()
    for e, w in enumerate(q.weight):
        if w <= 0:
            report.add("nonpositive_weight", f"edge {q.edges[e]} has weight {w}", q.edges[e])
    empty = q.sourceless_vertices()
    if strict:
        for v in empty:
            report.add("empty_source_fibre", f"vertex {q.vertices[v]} emits no edge", q.vertices[v])
    elif empty:
        report.notes.append("vertices with zero source measure: " + ", ".join(q.vertices[v] for v in empty))
    return report


@dataclass
class QuiverMorphism:
    vmap: tuple[int, ...]
    emap: tuple[int, ...]
    is_iso: bool = False
    is_equivariant: bool = False

    def inverse(self) -> "QuiverMorphism":
        vinv, einv = [0] * len(self.vmap), [0] * len(self.emap)
        for v, w in enumerate(self.vmap):
            vinv[w] = v
        for e, f in enumerate(self.emap):
            einv[f] = e
        return QuiverMorphism(tuple(vinv), tuple(einv), self.is_iso, self.is_equivariant)

    def compose(self, after: "QuiverMorphism") -> "QuiverMorphism":
        """``after o self``."""
        return QuiverMorphism(tuple(after.vmap[v] for v in self.vmap),
                              tuple(after.emap[e] for e in self.emap))

    def to_json(self) -> dict:
        return {"vmap": list(self.vmap), "emap": list(self.emap),
                "is_iso": self.is_iso, "is_equivariant": self.is_equivariant}


def check_morphism(m: QuiverMorphism, q1: FiniteQuiver, q2: FiniteQuiver,
                   iso: bool = False) -> Report:
    """Intertwining of ``src``/``rng``; with ``iso`` also bijectivity and pointwise weights."""
    report = Report()
    if len(m.vmap) != q1.n_vertices or len(m.emap) != q1.n_edges:
        report.add("shape", "morphism maps have the wrong length")
        return report
    if any(not 0 <= w < q2.n_vertices for w in m.vmap) or any(not 0 <= f < q2.n_edges for f in m.emap):
        report.add("shape", "morphism image out of range")
        return report
    for e in range(q1.n_edges):
        f = m.emap[e]
        if q2.src[f] != m.vmap[q1.src[e]]:
            report.add("src", "source not intertwined", q1.edges[e])
        if q2.rng[f] != m.vmap[q1.rng[e]]:
            report.add("rng", "range not intertwined", q1.edges[e])
    if iso:
        if sorted(m.vmap) != list(range(q2.n_vertices)):
            report.add("bijective", "vertex map is not a bijection")
        if sorted(m.emap) != list(range(q2.n_edges)):
            report.add("bijective", "edge map is not a bijection")
        for e in range(q1.n_edges):
            if q2.weight[m.emap[e]] != q1.weight[e]:
                report.add("weight", "weight not preserved", q1.edges[e])
    else:
        # pullback of the target measure must reproduce the source measure
        for v in range(q1.n_vertices):
            fibre: dict[int, Fraction] = defaultdict(Fraction)
            for e in q1.out_edges(v):
                fibre[m.emap[e]] += q1.weight[e]
            for f, mass in fibre.items():
                if q2.weight[f] != mass:
                    report.add("weight", "measures do not agree", q1.vertices[v])
                    break
    return report


def is_isomorphism(m: QuiverMorphism, q1: FiniteQuiver, q2: FiniteQuiver) -> bool:
    ok = check_morphism(m, q1, q2, iso=True).ok
    m.is_iso = ok
    return ok


# ---------------------------------------------------------------------------
# isomorphism search


def _edge_bundles(q: FiniteQuiver) -> dict[tuple[int, int], tuple[Fraction, ...]]:
    out: dict[tuple[int, int], list[Fraction]] = defaultdict(list)
    for e in range(q.n_edges):
        out[q.src[e], q.rng[e]].append(q.weight[e])
    return {k: tuple(sorted(v)) for k, v in out.items()}


def vertex_colours(q: FiniteQuiver, rounds: int | None = None) -> list[int]:
    """Colour refinement on the weighted multigraph; colours are isomorphism-invariant."""
    bundles = _edge_bundles(q)
    outs: dict[int, list] = defaultdict(list)
    ins: dict[int, list] = defaultdict(list)
    for (s, r), ws in bundles.items():
        outs[s].append((r, ws))
        ins[r].append((s, ws))
    colour = [0] * q.n_vertices
    sig0 = [(len(q.out_edges(v)), len(q.in_edges(v)), bundles.get((v, v), ()),
             tuple(sorted(w for e in q.out_edges(v) for w in (q.weight[e],))),
             tuple(sorted(q.weight[e] for e in q.in_edges(v))))
            for v in range(q.n_vertices)]
    colour = _canon_colours(sig0)
    for _ in range(rounds if rounds is not None else q.n_vertices):
        sig = [(colour[v],
                tuple(sorted((colour[r], ws) for r, ws in outs[v])),
                tuple(sorted((colour[s], ws) for s, ws in ins[v])))
               for v in range(q.n_vertices)]
        new = _canon_colours(sig)
        if len(set(new)) == len(set(colour)):
            break
        colour = new
    return colour


def _canon_colours(sigs: list) -> list[int]:
    # colour numbers depend only on the signatures, so they are comparable across quivers
    return [hash(s) for s in sigs]


def quiver_isomorphic(q1: FiniteQuiver, q2: FiniteQuiver) -> QuiverMorphism | None:
    """Find a weight-preserving isomorphism ``q1 -> q2`` or return ``None``.

    Deterministic backtracking over vertex bijections.  Candidates are
    restricted to equal refined colours; ``q1`` vertices are visited in
    order of (colour-class size, colour, index) and ``q2`` candidates in
    ascending index.
    """
    if q1.n_vertices != q2.n_vertices or q1.n_edges != q2.n_edges:
        return None
    if sorted(q1.weight) != sorted(q2.weight):
        return None
    c1 = vertex_colours(q1)
    c2 = vertex_colours(q2)
    if Counter(c1) != Counter(c2):
        return None
    b1, b2 = _edge_bundles(q1), _edge_bundles(q2)
    class_size = Counter(c1)
    order = sorted(range(q1.n_vertices), key=lambda v: (class_size[c1[v]], c1[v], v))
    # after the first vertex, prefer neighbours of already-placed vertices
    order = _connectivity_order(q1, order)
    cands = {v: [w for w in range(q2.n_vertices) if c2[w] == c1[v]] for v in order}
    nbrs1: dict[int, set[int]] = defaultdict(set)
    for (s, r) in b1:
        nbrs1[s].add(r)
        nbrs1[r].add(s)
    nbrs2: dict[int, set[int]] = defaultdict(set)
    for (s, r) in b2:
        nbrs2[s].add(r)
        nbrs2[r].add(s)

    vmap: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        if b1.get((v, v), ()) != b2.get((w, w), ()):
            return False
        placed_n1 = [u for u in nbrs1[v] if u in vmap]
        placed_n2 = {x for x in nbrs2[w] if x in used}
        if len(placed_n1) != len(placed_n2):
            return False
        for u in placed_n1:
            x = vmap[u]
            if x not in placed_n2:
                return False
            if b1.get((v, u), ()) != b2.get((w, x), ()) or b1.get((u, v), ()) != b2.get((x, w), ()):
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in cands[v]:
            if w in used or not consistent(v, w):
                continue
            vmap[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del vmap[v]
            used.discard(w)
        return False

    if not search(0):
        return None
    vm = tuple(vmap[v] for v in range(q1.n_vertices))
    m = QuiverMorphism(vm, _match_edges(q1, q2, vm))
    if not is_isomorphism(m, q1, q2):
        raise AssertionError("isomorphism search produced an invalid morphism")
    return m


def _connectivity_order(q: FiniteQuiver, base: list[int]) -> list[int]:
    rank = {v: i for i, v in enumerate(base)}
    adj: dict[int, set[int]] = defaultdict(set)
    for e in range(q.n_edges):
        adj[q.src[e]].add(q.rng[e])
        adj[q.rng[e]].add(q.src[e])
    out, seen = [], set()
    for start in base:
        if start in seen:
            continue
        frontier = {start}
        while frontier:
            v = min(frontier, key=rank.__getitem__)
            frontier.discard(v)
            if v in seen:
                continue
            seen.add(v)
            out.append(v)
            frontier |= adj[v] - seen
    return out


def _match_edges(q1: FiniteQuiver, q2: FiniteQuiver, vmap: Sequence[int]) -> tuple[int, ...]:
    pool: dict[tuple, list[int]] = defaultdict(list)
    for f in range(q2.n_edges):
        pool[q2.src[f], q2.rng[f], q2.weight[f]].append(f)
    emap = []
    for e in range(q1.n_edges):
        key = (vmap[q1.src[e]], vmap[q1.rng[e]], q1.weight[e])
        emap.append(pool[key].pop(0))
    return tuple(emap)


def identity_morphism(q: FiniteQuiver) -> QuiverMorphism:
    return QuiverMorphism(tuple(range(q.n_vertices)), tuple(range(q.n_edges)), True, True)


# ---------------------------------------------------------------------------
# connectivity


@dataclass
class Components:
    quivers: list[FiniteQuiver]
    vertex_component: tuple[int, ...]
    edge_component: tuple[int, ...]
    vertex_sets: list[tuple[int, ...]] = field(default_factory=list)
    edge_sets: list[tuple[int, ...]] = field(default_factory=list)

    def __len__(self):
        return len(self.quivers)


def connected_components(q: FiniteQuiver) -> Components:
    parent = list(range(q.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(q.n_edges):
        a, b = find(q.src[e]), find(q.rng[e])
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots: dict[int, int] = {}
    vcomp = []
    for v in range(q.n_vertices):      # ascending => ordered by minimal vertex
        r = find(v)
        if r not in roots:
            roots[r] = len(roots)
        vcomp.append(roots[r])
    ecomp = [vcomp[q.src[e]] for e in range(q.n_edges)]
    vsets = [tuple(v for v in range(q.n_vertices) if vcomp[v] == c) for c in range(len(roots))]
    esets = [tuple(e for e in range(q.n_edges) if ecomp[e] == c) for c in range(len(roots))]
    subs = [induced_subquiver(q, vs, es) for vs, es in zip(vsets, esets)]
    return Components(subs, tuple(vcomp), tuple(ecomp), vsets, esets)


def induced_subquiver(q: FiniteQuiver, vs: Sequence[int], es: Sequence[int]) -> FiniteQuiver:
    pos = {v: i for i, v in enumerate(vs)}
    return FiniteQuiver(tuple(q.vertices[v] for v in vs), tuple(q.edges[e] for e in es),
                        tuple(pos[q.src[e]] for e in es), tuple(pos[q.rng[e]] for e in es),
                        tuple(q.weight[e] for e in es), q.strict)
