"""Symbolic graph-algebra data for finite quivers.

Vertex-matrix convention: ``A[v][w]`` counts edges with range ``v`` and
source ``w``.  Cuntz-Krieger relations are ``s_e* s_e = p_{src e}`` and, at
each regular vertex ``v``, ``p_v = sum_{rng e = v} s_e s_e*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .action import QuiverAction, require_valid
from .errors import ConsistencyError
from .quiver import FiniteQuiver


def adjacency_matrix(q: FiniteQuiver, weighted: bool = False) -> list[list]:
    zero = Fraction(0) if weighted else 0
    a = [[zero] * q.n_vertices for _ in range(q.n_vertices)]
    for e in range(q.n_edges):
        a[q.rng[e]][q.src[e]] += q.weight[e] if weighted else 1
    return a


def regular_vertices(q: FiniteQuiver) -> list[int]:
    """Vertices receiving at least one edge.

    Finite receivers and the local-homeomorphism condition hold automatically
    for finite discrete quivers, so only the range condition remains.
    """
    hit = set(q.rng)
    return [v for v in range(q.n_vertices) if v in hit]


@dataclass
class AlgebraPresentation:
    projections: list[str]
    isometries: list[str]
    relations: list[dict]
    regular: list[int]
    weight_notes: list[str] = field(default_factory=list)

    def range_relations(self) -> list[dict]:
        return [r for r in self.relations if r["kind"] == "range"]

    def source_relations(self) -> list[dict]:
        return [r for r in self.relations if r["kind"] == "source"]

    def to_json(self) -> dict:
        return {
            "projections": self.projections,
            "isometries": self.isometries,
            "regular": [self.projections[v] for v in self.regular],
            "relations": self.relations,
            "weight_notes": self.weight_notes,
        }

    def to_text(self) -> str:
        lines = [f"generators: {len(self.projections)} projections, {len(self.isometries)} partial isometries"]
        for r in self.relations:
            lines.append("  " + r["text"])
        for note in self.weight_notes:
            lines.append("  note: " + note)
        return "\n".join(lines)


def ck_presentation(q: FiniteQuiver) -> AlgebraPresentation:
    ps = [f"p[{v}]" for v in q.vertices]
    ss = [f"s[{e}]" for e in q.edges]
    rels: list[dict] = []
    for v in range(q.n_vertices):
        for w in range(v + 1, q.n_vertices):
            rels.append({"kind": "orthogonal", "vertices": [q.vertices[v], q.vertices[w]],
                         "text": f"{ps[v]} {ps[w]} = 0"})
    for e in range(q.n_edges):
        rels.append({"kind": "source", "edge": q.edges[e], "vertex": q.vertices[q.src[e]],
                     "text": f"{ss[e]}* {ss[e]} = {ps[q.src[e]]}"})
    regular = regular_vertices(q)
    for v in regular:
        es = q.in_edges(v)
        rels.append({"kind": "range", "vertex": q.vertices[v], "edges": [q.edges[e] for e in es],
                     "text": f"{ps[v]} = " + " + ".join(f"{ss[e]} {ss[e]}*" for e in es)})
    notes = []
    for e in range(q.n_edges):
        w = q.weight[e]
        if w != 1:
            notes.append(f"edge {q.edges[e]} has weight {w}: rescale the basis vector "
                         f"delta_{q.edges[e]} by 1/sqrt({w}) to reach the counting correspondence")
    return AlgebraPresentation(ps, ss, rels, regular, notes)


@dataclass
class GeneratorAction:
    projections: tuple[tuple[int, ...], ...]    # [g][v] -> index of p_{v·g}
    isometries: tuple[tuple[int, ...], ...]     # [g][e] -> index of s_{e·g}

    def to_json(self, act: QuiverAction) -> dict:
        q, g = act.quiver, act.group
        return {g.labels[x]: {
            "projections": {f"p[{q.vertices[v]}]": f"p[{q.vertices[w]}]" for v, w in enumerate(self.projections[x])},
            "isometries": {f"s[{q.edges[e]}]": f"s[{q.edges[f]}]" for e, f in enumerate(self.isometries[x])},
        } for x in g.elements()}


def _relation_key(r: dict) -> tuple:
    if r["kind"] == "orthogonal":
        return ("orthogonal", frozenset(r["vertices"]))
    if r["kind"] == "source":
        return ("source", r["edge"], r["vertex"])
    return ("range", r["vertex"], frozenset(r["edges"]))


def induced_generator_action(act: QuiverAction) -> GeneratorAction:
    """``p_v -> p_{v·g}``, ``s_e -> s_{e·g}``; checks that each element maps the relation set onto itself."""
    require_valid(act)
    q = act.quiver
    pres = ck_presentation(q)
    keys = {_relation_key(r) for r in pres.relations}
    for x in act.group.elements():
        vp, ep = act.vperm[x], act.eperm[x]
        vlab = {q.vertices[v]: q.vertices[vp[v]] for v in range(q.n_vertices)}
        elab = {q.edges[e]: q.edges[ep[e]] for e in range(q.n_edges)}
        moved = set()
        for r in pres.relations:
            if r["kind"] == "orthogonal":
                moved.add(("orthogonal", frozenset(vlab[v] for v in r["vertices"])))
            elif r["kind"] == "source":
                moved.add(("source", elab[r["edge"]], vlab[r["vertex"]]))
            else:
                moved.add(("range", vlab[r["vertex"]], frozenset(elab[e] for e in r["edges"])))
        if moved != keys:
            raise ConsistencyError(f"element {act.group.labels[x]} does not preserve the relations")
    return GeneratorAction(act.vperm, act.eperm)


# ---------------------------------------------------------------------------
# Smith normal form and K-theory


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(S, D, T)`` with ``S M T = D`` diagonal, ``S``, ``T`` unimodular and
    ``D[0][0] | D[1][1] | ...``.  Exact Python integers throughout."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [[int(x) for x in row] for row in m]
    s = _identity(rows)
    t = _identity(cols)

    def swap_rows(a, i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(a, i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_row(a, src, dst, k):          # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]

    def add_col(a, src, dst, k):          # col dst += k * col src
        for row in a:
            row[dst] += k * row[src]

    for k in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(k, rows):
                for j in range(k, cols):
                    if d[i][j] and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return s, d, t
            i, j = pivot
            if i != k:
                swap_rows(d, i, k)
                swap_rows(s, i, k)
            if j != k:
                swap_cols(d, j, k)
                swap_cols(t, j, k)
            p = d[k][k]
            done = True
            for i in range(k + 1, rows):
                q = d[i][k] // p
                if q:
                    add_row(d, k, i, -q)
                    add_row(s, k, i, -q)
                if d[i][k]:
                    done = False
            for j in range(k + 1, cols):
                q = d[k][j] // p
                if q:
                    add_col(d, k, j, -q)
                    add_col(t, k, j, -q)
                if d[k][j]:
                    done = False
            if not done:
                continue
            # divisibility: fold any entry not divisible by the pivot into row k
            bad = next(((i, j) for i in range(k + 1, rows) for j in range(k + 1, cols)
                        if d[i][j] % p), None)
            if bad is None:
                break
            add_row(d, bad[0], k, 1)
            add_row(s, bad[0], k, 1)
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            s[k] = [-x for x in s[k]]
    return s, d, t


def invariant_factors(m: list[list[int]]) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [abs(d[i][i]) for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


@dataclass(frozen=True)
class KTheoryResult:
    k0_free_rank: int
    k0_torsion: tuple[int, ...]
    k1_free_rank: int

    def to_json(self) -> dict:
        return {"k0": {"rank": self.k0_free_rank, "torsion": list(self.k0_torsion)},
                "k1": {"rank": self.k1_free_rank}}


def k_theory_matrix(q: FiniteQuiver) -> list[list[int]]:
    """Matrix (rows: all vertices, columns: regular vertices) of ``delta_v -> delta_v - sum_w A[v][w] delta_w``."""
    a = adjacency_matrix(q)
    reg = regular_vertices(q)
    return [[int(w == v) - a[v][w] for v in reg] for w in range(q.n_vertices)]


def k_theory(q: FiniteQuiver) -> KTheoryResult:
    reg = regular_vertices(q)
    n = q.n_vertices
    if not reg:
        return KTheoryResult(n, (), 0)
    factors = invariant_factors(k_theory_matrix(q))
    rank = len(factors)
    return KTheoryResult(n - rank, tuple(f for f in factors if f > 1), len(reg) - rank)
