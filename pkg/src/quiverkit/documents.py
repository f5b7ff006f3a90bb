"""JSON workspace documents (schema ``quiverkit/1``).

A document is an object with optional sections::

    {"schema": "quiverkit/1",
     "groups":        {name: {"kind": "cyclic", "n": 4} | {"kind": "cayley", "table": [...]} | ...},
     "subgroups":     {name: {"group": g, "elements": [...]} | {"group": g, "generators": [...]}},
     "homs":          {name: {"domain": g, "codomain": g, "map": [...]} | {"group": g, "power": m}},
     "maps":          {name: {"group": g, "map": [...]} | {"group": g, "right_multiply": x} | ...},
     "quivers":       {name: {"vertices": [...], "edges": [{"id", "src", "rng", "weight": "p/q"}], "strict": true}},
     "actions":       {name: {"group": g, "quiver": q, "vertex_perm": {x: [...]}, "edge_perm": {x: [...]}}},
     "bundles":       {name: {"group": g, "base": q, "total": [...], "action": {x: [...]},
                              "proj": [...], "theta": [[[e, p], [e, p]], ...]}},
     "constructions": {name: {"op": "skew" | "coset" | ..., ...}}}

Constructions run in document order; each stores its outputs under its own
name (and ``name.skew`` / ``name.group`` where it has several).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .action import QuiverAction, validate_action
from .constructions import (PrincipalBundleData, bundle_quiver, classify_action, coset_action,
                            coset_quiver, double_coset_quotient, relation_action,
                            relation_quiver, semidirect_skew_check, skew_product, validate_bundle)
from .errors import InvalidInput, ParseError
from .groups import (STANDARD_KINDS, FiniteGroup, GroupHom, Subgroup, constant_map,
                     generated_subgroup, inversion_action, left_multiplication, make_semidirect,
                     power_endomorphism, right_multiplication, standard_group)
from .quiver import FiniteQuiver, validate_quiver

SCHEMA = "quiverkit/1"
SECTIONS = ("groups", "subgroups", "homs", "maps", "quivers", "actions", "bundles", "constructions")
KINDS = ("groups", "subgroups", "homs", "maps", "quivers", "actions", "bundles")


@dataclass
class BundleEntry:
    base: str
    data: PrincipalBundleData


@dataclass
class Workspace:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    subgroups: dict[str, Subgroup] = field(default_factory=dict)
    homs: dict[str, GroupHom] = field(default_factory=dict)
    maps: dict[str, tuple[str, tuple[int, ...]]] = field(default_factory=dict)
    quivers: dict[str, FiniteQuiver] = field(default_factory=dict)
    actions: dict[str, QuiverAction] = field(default_factory=dict)
    bundles: dict[str, BundleEntry] = field(default_factory=dict)
    constructions: dict[str, dict] = field(default_factory=dict, compare=False)
    provenance: dict[tuple[str, str], tuple[str, int | None]] = field(default_factory=dict, compare=False)
    # actions are stored even when validate_action reports violations (verify-action uses this)
    lenient_actions: bool = field(default=False, compare=False, repr=False)

    def get(self, kind: str, name: Any):
        table = getattr(self, kind)
        if not isinstance(name, str) or name not in table:
            raise InvalidInput(f"dangling reference: no {kind[:-1]} named {name!r}")
        return table[name]

    def put(self, kind: str, name: str, obj, where: tuple[str, int | None]) -> None:
        table = getattr(self, kind)
        if name in table:
            raise InvalidInput(f"duplicate {kind[:-1]} name {name!r}")
        table[name] = obj
        self.provenance[kind, name] = where

    def group_name(self, g: FiniteGroup) -> str | None:
        for name, h in self.groups.items():
            if h == g:
                return name
        return None

    def ensure_group(self, g: FiniteGroup, preferred: str, where) -> str:
        name = self.group_name(g)
        if name is None:
            name = preferred
            self.put("groups", name, g, where)
        return name

    def counts(self) -> dict[str, int]:
        return {k: len(getattr(self, k)) for k in KINDS}


# ---------------------------------------------------------------------------
# parsing


def _line_of(text: str, section: str, name: str) -> int | None:
    sec = text.find(f'"{section}"')
    if sec < 0:
        return None
    pos = text.find(f'"{name}"', sec)
    if pos < 0:
        return None
    return text.count("\n", 0, pos) + 1


def _position_of(text: str, needle: str) -> tuple[int | None, int | None]:
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_document(data: bytes | str, source: str = "<input>", strict: bool | None = None,
                   ws: Workspace | None = None, lenient_actions: bool = False) -> Workspace:
    """Parse and validate one document, optionally into an existing workspace.

    ``strict`` overrides each quiver's own ``strict`` flag when not ``None``.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    else:
        text = data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"JSON syntax error: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", 1, 1)
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ParseError(f"unsupported schema {schema!r}, expected {SCHEMA!r}", *_position_of(text, '"schema"'))
    unknown = set(doc) - set(SECTIONS) - {"schema"}
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(f"unknown top-level key {key!r}", *_position_of(text, f'"{key}"'))
    ws = ws if ws is not None else Workspace()
    ws.lenient_actions = lenient_actions
    for section in SECTIONS:
        body = doc.get(section, {})
        if not isinstance(body, dict):
            raise ParseError(f"section {section!r} must be an object", *_position_of(text, f'"{section}"'))
        if section == "groups":
            _parse_groups(ws, body, text, source)
            continue
        for name, spec in body.items():
            where = (source, _line_of(text, section, name))
            try:
                if not isinstance(spec, dict):
                    raise InvalidInput(f"{section}.{name} must be an object")
                _PARSERS[section](ws, name, spec, where, strict)
            except ParseError:
                raise
            except InvalidInput as exc:
                line, col = where[1], None
                bad = _bad_weight(spec)
                if bad is not None:
                    line, col = _position_of(text, json.dumps(bad))
                witness = f" [witness: {exc.witness}]" if exc.witness is not None else ""
                raise ParseError(f"{section}.{name}: {exc}{witness}", line, col) from None
    return ws


def _bad_weight(spec) -> str | None:
    edges = spec.get("edges") if isinstance(spec, dict) else None
    if not isinstance(edges, list):
        return None
    for e in edges:
        w = e.get("weight") if isinstance(e, dict) else None
        if w is None:
            continue
        try:
            if Fraction(w) <= 0:
                return w
        except (ValueError, ZeroDivisionError, TypeError):
            return w
    return None


def _parse_groups(ws: Workspace, body: dict, text: str, source: str) -> None:
    pending = dict(body)
    while pending:
        progressed = False
        for name in list(pending):
            spec = pending[name]
            where = (source, _line_of(text, "groups", name))
            deps = [spec.get(k) for k in ("N", "H")] if isinstance(spec, dict) and spec.get("kind") == "semidirect" else []
            if any(isinstance(d, str) and d in pending and d != name for d in deps):
                continue
            try:
                _parse_group(ws, name, spec, where)
            except InvalidInput as exc:
                raise ParseError(f"groups.{name}: {exc}", where[1]) from None
            del pending[name]
            progressed = True
        if not progressed:
            name = sorted(pending)[0]
            raise ParseError(f"groups.{name}: cyclic or dangling group reference",
                             _line_of(text, "groups", name))


def _parse_group(ws: Workspace, name: str, spec, where) -> None:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidInput("group needs a 'kind'")
    kind = spec["kind"]
    if kind in STANDARD_KINDS:
        g = standard_group(kind, spec.get("n"))
        g = _renamed(g, name)
    elif kind == "cayley":
        g = FiniteGroup.from_table(spec.get("table", []), spec.get("labels"), name)
    elif kind == "semidirect":
        n = ws.get("groups", spec.get("N"))
        h = ws.get("groups", spec.get("H"))
        act = spec.get("action")
        if act == "inversion":
            hact = inversion_action(n, h)
        elif act is None or act == "trivial":
            hact = None
        elif isinstance(act, dict):
            hact = [tuple(range(n.order))] * h.order
            for ref, images in act.items():
                hact[h.element(_ref(ref))] = tuple(n.element(x) for x in images)
        else:
            raise InvalidInput("semidirect 'action' must be 'inversion', 'trivial' or an object")
        g, n_sub, h_sub = make_semidirect(n, h, hact, name)
        ws.put("groups", name, g, where)
        ws.put("subgroups", f"{name}.N", n_sub, where)
        ws.put("subgroups", f"{name}.H", h_sub, where)
        return
    else:
        raise InvalidInput(f"unknown group kind {kind!r}")
    ws.put("groups", name, g, where)


def _renamed(g: FiniteGroup, name: str) -> FiniteGroup:
    return FiniteGroup(g.cayley, g.identity, g.inverses, g.labels, name)


def _ref(x):
    """Labels are strings; JSON integers are indices; numeric strings stay labels."""
    return x


def _parse_subgroup(ws, name, spec, where, strict):
    g = ws.get("groups", spec.get("group"))
    if "elements" in spec:
        s = Subgroup(g, tuple(g.element(x) for x in spec["elements"]))
    elif "generators" in spec:
        s = generated_subgroup(g, spec["generators"])
    else:
        raise InvalidInput("subgroup needs 'elements' or 'generators'")
    ws.put("subgroups", name, s, where)


def _parse_hom(ws, name, spec, where, strict):
    if "power" in spec:
        g = ws.get("groups", spec.get("group"))
        h = power_endomorphism(g, int(spec["power"]))
    else:
        d = ws.get("groups", spec.get("domain"))
        c = ws.get("groups", spec.get("codomain"))
        images = spec.get("map")
        if not isinstance(images, list):
            raise InvalidInput("hom needs a 'map' array or a 'power'")
        h = GroupHom(d, c, tuple(c.element(x) for x in images))
    ws.put("homs", name, h, where)


def _parse_map(ws, name, spec, where, strict):
    gname = spec.get("group")
    g = ws.get("groups", gname)
    if "map" in spec:
        m = tuple(g.element(x) for x in spec["map"])
        if len(m) != g.order:
            raise InvalidInput("element map needs one image per element")
    elif "right_multiply" in spec:
        m = right_multiplication(g, g.element(spec["right_multiply"]))
    elif "left_multiply" in spec:
        m = left_multiplication(g, g.element(spec["left_multiply"]))
    elif "constant" in spec:
        m = constant_map(g, g.element(spec["constant"]))
    elif spec.get("identity"):
        m = tuple(g.elements())
    else:
        raise InvalidInput("map needs 'map', 'right_multiply', 'left_multiply', 'constant' or 'identity'")
    ws.put("maps", name, (gname, m), where)


def _index_ref(labels, ref, what):
    if isinstance(ref, bool):
        raise InvalidInput(f"bad {what} reference {ref!r}")
    if isinstance(ref, int):
        if 0 <= ref < len(labels):
            return ref
        raise InvalidInput(f"{what} index {ref} out of range")
    try:
        return labels.index(ref)
    except ValueError:
        raise InvalidInput(f"unknown {what} {ref!r}") from None


def _parse_quiver(ws, name, spec, where, strict):
    vertices = spec.get("vertices")
    edges = spec.get("edges")
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise InvalidInput("quiver needs 'vertices' and 'edges' arrays")
    vertices = [str(v) for v in vertices]
    ids, src, rng, wt = [], [], [], []
    for k, e in enumerate(edges):
        if not isinstance(e, dict):
            raise InvalidInput("each edge must be an object")
        ids.append(str(e.get("id", f"e{k}")))
        src.append(_index_ref(vertices, e.get("src"), "vertex"))
        rng.append(_index_ref(vertices, e.get("rng"), "vertex"))
        w = e.get("weight", "1")
        if isinstance(w, float):
            raise InvalidInput("weights must be exact 'p/q' strings, not floats")
        wt.append(w)
    mode = spec.get("strict", True) if strict is None else strict
    q = FiniteQuiver(tuple(vertices), tuple(ids), tuple(src), tuple(rng), tuple(wt), bool(mode))
    _require(validate_quiver(q), "quiver")
    ws.put("quivers", name, q, where)


def _require(report, what):
    if not report.ok:
        v = report.violations[0]
        raise InvalidInput(f"{what} failed validation: {v.message}", witness=v.witness)


def _perm_table(g: FiniteGroup, spec, labels, what) -> dict[int, tuple[int, ...]]:
    if not isinstance(spec, dict):
        raise InvalidInput(f"{what} must be an object keyed by group element")
    out = {}
    for ref, perm in spec.items():
        x = g.element(ref)
        if not isinstance(perm, list):
            raise InvalidInput(f"{what} for {ref!r} must be an array")
        out[x] = tuple(_index_ref(labels, p, what) for p in perm)
    return out


def _parse_action(ws, name, spec, where, strict):
    g = ws.get("groups", spec.get("group"))
    q = ws.get("quivers", spec.get("quiver"))
    vg = _perm_table(g, spec.get("vertex_perm", {}), list(q.vertices), "vertex_perm")
    eg = _perm_table(g, spec.get("edge_perm", {}), list(q.edges), "edge_perm")
    if not vg and not eg:
        act = QuiverAction.trivial(g, q)
    else:
        act = QuiverAction.from_generators(g, q, vg, eg)
    if not ws.lenient_actions:
        _require(validate_action(act), "action")
    ws.put("actions", name, act, where)


def _parse_bundle(ws, name, spec, where, strict):
    gname, bname = spec.get("group"), spec.get("base")
    g = ws.get("groups", gname)
    base = ws.get("quivers", bname)
    total = [str(p) for p in spec.get("total", [])]
    acts = _perm_table(g, spec.get("action", {}), total, "action")
    if set(acts) != set(g.elements()):
        act = QuiverAction.from_generators(g, FiniteQuiver(tuple(total), (), (), (), (), False),
                                           acts, {x: () for x in acts})
        pact = act.vperm
    else:
        pact = tuple(acts[x] for x in g.elements())
    proj = tuple(_index_ref(list(base.vertices), v, "base vertex") for v in spec.get("proj", []))
    theta = {}
    for pair in spec.get("theta", []):
        try:
            (e1, p1), (e2, p2) = pair
        except (TypeError, ValueError):
            raise InvalidInput("theta entries must be [[edge, p], [edge, p]]") from None
        key = (_index_ref(list(base.edges), e1, "edge"), _index_ref(total, p1, "point"))
        if key in theta:
            raise InvalidInput("theta defined twice", witness=pair)
        theta[key] = (_index_ref(list(base.edges), e2, "edge"), _index_ref(total, p2, "point"))
    data = PrincipalBundleData(g, tuple(total), pact, proj, theta)
    _require(validate_bundle(base, data), "bundle")
    ws.put("bundles", name, BundleEntry(bname, data), where)


# ---------------------------------------------------------------------------
# constructions


def _parse_construction(ws: Workspace, name, spec, where, strict):
    op = spec.get("op")
    handler = _OPS.get(op)
    if handler is None:
        raise InvalidInput(f"unknown construction op {op!r}")
    summary = handler(ws, name, spec, where)
    summary = {"op": op, **summary}
    ws.constructions[name] = summary
    ws.provenance["constructions", name] = where


def _phi(ws, spec, g: FiniteGroup, key="phi"):
    ref = spec.get(key)
    if isinstance(ref, str) and ref in ws.maps:
        gname, m = ws.maps[ref]
        if ws.groups[gname] != g:
            raise InvalidInput(f"map {ref!r} is defined on another group")
        return m
    if isinstance(ref, list):
        return tuple(g.element(x) for x in ref)
    raise InvalidInput(f"dangling reference: no map named {ref!r}")


def _op_skew(ws, name, spec, where):
    q = ws.get("quivers", spec.get("quiver"))
    g = ws.get("groups", spec.get("group"))
    kappa = spec.get("kappa")
    if not isinstance(kappa, list):
        raise InvalidInput("skew needs a 'kappa' array (one group element per edge)")
    sq, act = skew_product(q, g, [g.element(k) for k in kappa])
    ws.put("quivers", name, sq, where)
    ws.put("actions", name, act, where)
    return {"quiver": name, "action": name, "vertices": sq.n_vertices, "edges": sq.n_edges}


def _op_coset(ws, name, spec, where):
    g = ws.get("groups", spec.get("group"))
    n = ws.get("subgroups", spec.get("subgroup"))
    q = coset_quiver(g, n, _phi(ws, spec, g))
    ws.put("quivers", name, q, where)
    return {"quiver": name, "vertices": q.n_vertices, "edges": q.n_edges}


def _op_coset_action(ws, name, spec, where):
    g = ws.get("groups", spec.get("group"))
    n = ws.get("subgroups", spec.get("subgroup"))
    h = ws.get("subgroups", spec.get("H"))
    act = coset_action(g, n, _phi(ws, spec, g), h, spec.get("side", "right"))
    gname = ws.ensure_group(act.group, f"{name}.group", where)
    ws.put("quivers", name, act.quiver, where)
    ws.put("actions", name, act, where)
    return {"quiver": name, "action": name, "group": gname}


def _op_double_coset(ws, name, spec, where):
    g = ws.get("groups", spec.get("group"))
    n = ws.get("subgroups", spec.get("subgroup"))
    h = ws.get("subgroups", spec.get("H"))
    res = double_coset_quotient(g, n, _phi(ws, spec, g), h)
    ws.put("quivers", name, res.quiver, where)
    return {"quiver": name, "vertices": res.quiver.n_vertices, "edges": res.quiver.n_edges,
            "morphism_from_generic": res.morphism.to_json()}


def _op_relation(ws, name, spec, where):
    g = ws.get("groups", spec.get("group"))
    a = ws.get("homs", spec.get("alpha"))
    b = ws.get("homs", spec.get("beta"))
    q = relation_quiver(g, a, b)
    ws.put("quivers", name, q, where)
    return {"quiver": name, "vertices": q.n_vertices, "edges": q.n_edges, "strict": q.strict}


def _op_relation_action(ws, name, spec, where):
    g = ws.get("groups", spec.get("group"))
    a = ws.get("homs", spec.get("alpha"))
    b = ws.get("homs", spec.get("beta"))
    act = relation_action(g, a, b)
    gname = ws.ensure_group(act.group, f"{name}.group", where)
    ws.put("quivers", name, act.quiver, where)
    ws.put("actions", name, act, where)
    return {"quiver": name, "action": name, "group": gname, "group_order": act.group.order}


def _op_bundle(ws, name, spec, where):
    entry = ws.get("bundles", spec.get("bundle"))
    bq = bundle_quiver(ws.get("quivers", entry.base), entry.data)
    ws.put("quivers", name, bq.quiver, where)
    ws.put("actions", name, bq.action, where)
    return {"quiver": name, "action": name, "projection": bq.projection.to_json()}


def _op_classify(ws, name, spec, where):
    act = ws.get("actions", spec.get("action"))
    c = classify_action(act)
    gname = ws.ensure_group(act.group, f"{name}.group", where)
    ws.put("quivers", name, c.base, where)
    ws.put("bundles", name, BundleEntry(name, c.bundle), where)
    return {"quiver": name, "bundle": name, "group": gname, "witness": c.witness.to_json()}


def _op_semidirect_skew(ws, name, spec, where):
    n = ws.get("groups", spec.get("N"))
    h = ws.get("groups", spec.get("H"))
    act = spec.get("action")
    if act == "inversion":
        hact = inversion_action(n, h)
    elif act in (None, "trivial"):
        hact = None
    else:
        hact = [tuple(range(n.order))] * h.order
        for ref, images in act.items():
            hact[h.element(ref)] = tuple(n.element(x) for x in images)
    c = spec.get("c")
    if not isinstance(c, list):
        raise InvalidInput("semidirect_skew needs 'c' (one H-element per N-element)")
    rep = semidirect_skew_check(n, h, hact, [h.element(x) for x in c])
    ws.put("groups", name, rep.group, where)
    ag = ws.ensure_group(rep.coset_action.group, f"{name}.H", where)
    ws.put("quivers", name, rep.coset, where)
    ws.put("quivers", f"{name}.skew", rep.skew, where)
    ws.put("actions", name, rep.coset_action, where)
    if rep.skew_action.group != rep.coset_action.group:
        ws.ensure_group(rep.skew_action.group, f"{name}.skewgroup", where)
    ws.put("actions", f"{name}.skew", rep.skew_action, where)
    return {"quiver": name, "skew": f"{name}.skew", "group": ag, "psi0": list(rep.psi0),
            "psi1": list(rep.psi1), "isomorphism": rep.is_isomorphism, "equivariant": rep.is_equivariant}


_OPS = {
    "skew": _op_skew,
    "coset": _op_coset,
    "coset_action": _op_coset_action,
    "double_coset": _op_double_coset,
    "relation": _op_relation,
    "relation_action": _op_relation_action,
    "bundle": _op_bundle,
    "classify": _op_classify,
    "semidirect_skew": _op_semidirect_skew,
}

_PARSERS = {
    "subgroups": _parse_subgroup,
    "homs": _parse_hom,
    "maps": _parse_map,
    "quivers": _parse_quiver,
    "actions": _parse_action,
    "bundles": _parse_bundle,
    "constructions": _parse_construction,
}


# ---------------------------------------------------------------------------
# emitting


def fraction_str(w: Fraction) -> str:
    return f"{w.numerator}/{w.denominator}"


def group_to_json(g: FiniteGroup) -> dict:
    return {"kind": "cayley", "labels": list(g.labels), "table": [list(r) for r in g.cayley]}


def quiver_to_json(q: FiniteQuiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "edges": [{"id": q.edges[e], "src": q.vertices[q.src[e]], "rng": q.vertices[q.rng[e]],
                   "weight": fraction_str(q.weight[e])} for e in range(q.n_edges)],
        "strict": q.strict,
    }


def action_to_json(act: QuiverAction, group: str, quiver: str) -> dict:
    g = act.group
    return {
        "group": group,
        "quiver": quiver,
        "vertex_perm": {g.labels[x]: list(act.vperm[x]) for x in g.elements()},
        "edge_perm": {g.labels[x]: list(act.eperm[x]) for x in g.elements()},
    }


def _require_name(ws: Workspace, kind: str, obj, eq=None) -> str:
    for name, other in getattr(ws, kind).items():
        if other == obj:
            return name
    raise InvalidInput(f"object has no name in the workspace ({kind})")


def emit_workspace(ws: Workspace) -> dict:
    """A self-contained document whose parse reproduces every object of ``ws``."""
    doc: dict[str, Any] = {"schema": SCHEMA}
    doc["groups"] = {n: group_to_json(g) for n, g in ws.groups.items()}
    doc["subgroups"] = {n: {"group": _require_name(ws, "groups", s.parent),
                            "elements": s.labels()} for n, s in ws.subgroups.items()}
    doc["homs"] = {n: {"domain": _require_name(ws, "groups", h.domain),
                       "codomain": _require_name(ws, "groups", h.codomain),
                       "map": [h.codomain.labels[y] for y in h.map]} for n, h in ws.homs.items()}
    doc["maps"] = {n: {"group": gname, "map": [ws.groups[gname].labels[y] for y in m]}
                   for n, (gname, m) in ws.maps.items()}
    doc["quivers"] = {n: quiver_to_json(q) for n, q in ws.quivers.items()}
    actions = {}
    for n, act in ws.actions.items():
        qname = n if ws.quivers.get(n) == act.quiver else _require_name(ws, "quivers", act.quiver)
        actions[n] = action_to_json(act, _require_name(ws, "groups", act.group), qname)
    doc["actions"] = actions
    bundles = {}
    for n, entry in ws.bundles.items():
        b = entry.data
        base = ws.quivers[entry.base]
        g = b.group
        bundles[n] = {
            "group": _require_name(ws, "groups", g),
            "base": entry.base,
            "total": list(b.total),
            "action": {g.labels[x]: list(b.pact[x]) for x in g.elements()},
            "proj": [base.vertices[v] for v in b.proj],
            "theta": [[[base.edges[e], b.total[p]], [base.edges[e2], b.total[p2]]]
                      for (e, p), (e2, p2) in sorted(b.theta.items())],
        }
    doc["bundles"] = bundles
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
