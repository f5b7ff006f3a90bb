"""``quiverkit <command> --input FILE [--name OBJ]... [--strict|--relaxed] [--output FILE]``

The JSON report goes to stdout (or ``--output``), a one-line summary to
stderr.  Exit codes: 0 success, 1 invalid input, 2 a checked property
failed, 3 internal consistency error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from .action import (component_orbits, is_free, orbit_constant_weights, orbits, quotient_quiver,
                     validate_action)
from .algebra import ck_presentation, k_theory, regular_vertices
from .constructions import bundle_quiver, classify_action
from .documents import (Workspace, action_to_json, dumps, emit_workspace, parse_document,
                        quiver_to_json)
from .errors import ConsistencyError, InvalidInput, PropertyFailure, QuiverkitError
from .quiver import connected_components, is_isomorphism, quiver_isomorphic

COMMANDS = ("build", "verify-action", "quotient", "skew", "coset", "relation", "classify",
            "roundtrip", "iso", "components", "ktheory", "presentation", "report")


class Outcome:
    def __init__(self, report: dict, summary: str, code: int = 0):
        self.report = report
        self.summary = summary
        self.code = code


def _pick(ws: Workspace, kind: str, names: list[str], command: str) -> str:
    table = getattr(ws, kind)
    if names:
        name = names[0]
        if name not in table:
            raise InvalidInput(f"{command}: no {kind[:-1]} named {name!r}")
        return name
    if len(table) == 1:
        return next(iter(table))
    raise InvalidInput(f"{command}: specify --name (workspace has {len(table)} {kind})")


def _construction(ws: Workspace, names: list[str], op: str, command: str) -> tuple[str, dict]:
    matching = [n for n, c in ws.constructions.items() if c["op"] == op]
    if names:
        name = names[0]
        if name not in matching:
            raise InvalidInput(f"{command}: no {op} construction named {name!r}")
    elif len(matching) == 1:
        name = matching[0]
    else:
        raise InvalidInput(f"{command}: specify --name (workspace has {len(matching)} {op} constructions)")
    return name, ws.constructions[name]


def _group_name(ws: Workspace, g) -> str:
    return ws.group_name(g) or g.name or "G"


def cmd_build(ws: Workspace, names: list[str]) -> Outcome:
    doc = emit_workspace(ws)
    if names:
        picked: dict = {"schema": doc["schema"]}
        for name in names:
            found = False
            for kind in ("groups", "subgroups", "homs", "maps", "quivers", "actions", "bundles"):
                if name in doc[kind]:
                    picked.setdefault(kind, {})[name] = doc[kind][name]
                    found = True
            if not found:
                raise InvalidInput(f"build: no object named {name!r}")
        doc = picked
    counts = ws.counts()
    text = ", ".join(f"{n} {k}" for k, n in counts.items() if n)
    return Outcome(doc, f"built workspace: {text or 'empty'}")


def cmd_verify_action(ws: Workspace, names: list[str]) -> Outcome:
    name = _pick(ws, "actions", names, "verify-action")
    act = ws.actions[name]
    report = validate_action(act)
    out = {"action": name, "valid": report.ok, **report.to_json()}
    if report.ok:
        fr = is_free(act)
        orb = orbits(act)
        out.update({
            "freeness": fr.to_json(act),
            "vertex_orbits": len(orb.vertex_orbits),
            "edge_orbits": len(orb.edge_orbits),
        })
    out["orbit_constant_weights"] = orbit_constant_weights(act)
    code = 0 if report.ok else 2
    verdict = "valid" if report.ok else f"invalid ({', '.join(sorted(report.kinds()))})"
    return Outcome(out, f"action {name}: {verdict}", code)


def cmd_quotient(ws: Workspace, names: list[str]) -> Outcome:
    name = _pick(ws, "actions", names, "quotient")
    act = ws.actions[name]
    res = quotient_quiver(act)
    q = act.quiver
    out = {
        "action": name,
        "quotient": quiver_to_json(res.quotient),
        "vertex_map": {q.vertices[v]: res.quotient.vertices[res.q0[v]] for v in range(q.n_vertices)},
        "edge_map": {q.edges[e]: res.quotient.edges[res.q1[e]] for e in range(q.n_edges)},
    }
    return Outcome(out, f"quotient of {name}: {res.quotient.n_vertices} vertices, "
                        f"{res.quotient.n_edges} edges")


def _construction_command(op: str, command: str) -> Callable[[Workspace, list[str]], Outcome]:
    def run(ws: Workspace, names: list[str]) -> Outcome:
        name, summary = _construction(ws, names, op, command)
        q = ws.quivers[summary["quiver"]]
        out = {"name": name, **summary, "quiver": quiver_to_json(q)}
        if name in ws.actions and ws.actions[name].quiver == q:
            act = ws.actions[name]
            out["action"] = action_to_json(act, _group_name(ws, act.group), name)
        return Outcome(out, f"{op} {name}: {q.n_vertices} vertices, {q.n_edges} edges")
    return run


def cmd_classify(ws: Workspace, names: list[str]) -> Outcome:
    name = _pick(ws, "actions", names, "classify")
    act = ws.actions[name]
    c = classify_action(act)
    b = c.bundle
    base, q, g = c.base, act.quiver, act.group
    out = {
        "action": name,
        "base": quiver_to_json(base),
        "bundle": {
            "group": _group_name(ws, g),
            "total": list(b.total),
            "proj": [base.vertices[v] for v in b.proj],
            "theta": [[[base.edges[e], b.total[p]], [base.edges[e2], b.total[p2]]]
                      for (e, p), (e2, p2) in sorted(b.theta.items())],
        },
        "witness": c.witness.to_json(),
    }
    return Outcome(out, f"classified {name}: base has {base.n_vertices} vertices, {base.n_edges} edges")


def cmd_roundtrip(ws: Workspace, names: list[str]) -> Outcome:
    name = _pick(ws, "actions", names, "roundtrip")
    act = ws.actions[name]
    try:
        c = classify_action(act)
    except ConsistencyError as exc:
        raise PropertyFailure(f"round trip failed: {exc}") from None
    rebuilt = bundle_quiver(c.base, c.bundle)
    ok = is_isomorphism(c.witness, rebuilt.quiver, act.quiver) and c.witness.is_equivariant
    out = {"action": name, "isomorphic": ok, "equivariant": c.witness.is_equivariant,
           "witness": c.witness.to_json()}
    return Outcome(out, f"roundtrip {name}: {'ok' if ok else 'FAILED'}", 0 if ok else 2)


def cmd_iso(ws: Workspace, names: list[str]) -> Outcome:
    if len(names) != 2:
        raise InvalidInput("iso: give exactly two --name arguments")
    q1 = ws.get("quivers", names[0])
    q2 = ws.get("quivers", names[1])
    m = quiver_isomorphic(q1, q2)
    out = {"quivers": names, "isomorphic": m is not None}
    if m is not None:
        out["morphism"] = {
            "vertices": {q1.vertices[v]: q2.vertices[w] for v, w in enumerate(m.vmap)},
            "edges": {q1.edges[e]: q2.edges[f] for e, f in enumerate(m.emap)},
        }
    return Outcome(out, f"{names[0]} {'~' if m else '!~'} {names[1]}", 0 if m else 2)


def cmd_components(ws: Workspace, names: list[str]) -> Outcome:
    name = _pick(ws, "quivers", names, "components")
    q = ws.quivers[name]
    comps = connected_components(q)
    out = {"quiver": name, "components": len(comps),
           "sizes": [[len(vs), len(es)] for vs, es in zip(comps.vertex_sets, comps.edge_sets)]}
    summary = f"{name}: {len(comps)} components"
    act = ws.actions.get(name)
    if act is not None and act.quiver == q:
        co = component_orbits(act)
        out["component_orbits"] = co.n_orbits
        summary += f", {co.n_orbits} component orbits"
    return Outcome(out, summary)


def cmd_ktheory(ws: Workspace, names: list[str]) -> Outcome:
    name = _pick(ws, "quivers", names, "ktheory")
    q = ws.quivers[name]
    k = k_theory(q)
    out = {"quiver": name, **k.to_json()}
    tors = "".join(f" + Z/{t}" for t in k.k0_torsion)
    return Outcome(out, f"{name}: K0 = Z^{k.k0_free_rank}{tors}, K1 = Z^{k.k1_free_rank}")


def cmd_presentation(ws: Workspace, names: list[str]) -> Outcome:
    name = _pick(ws, "quivers", names, "presentation")
    pres = ck_presentation(ws.quivers[name])
    return Outcome({"quiver": name, **pres.to_json()}, pres.to_text())


def cmd_report(ws: Workspace, names: list[str]) -> Outcome:
    quivers = {}
    for name, q in ws.quivers.items():
        if names and name not in names:
            continue
        k = k_theory(q)
        quivers[name] = {"vertices": q.n_vertices, "edges": q.n_edges, "strict": q.strict,
                         "components": len(connected_components(q)),
                         "regular_vertices": len(regular_vertices(q)), **k.to_json()}
    actions = {}
    for name, act in ws.actions.items():
        if names and name not in names:
            continue
        rep = validate_action(act)
        entry = {"group_order": act.group.order, "valid": rep.ok}
        if rep.ok:
            orb = orbits(act)
            entry.update(is_free(act).to_json(act))
            entry.update({"vertex_orbits": len(orb.vertex_orbits), "edge_orbits": len(orb.edge_orbits),
                          "component_orbits": component_orbits(act).n_orbits})
        actions[name] = entry
    out = {"objects": ws.counts(), "quivers": quivers, "actions": actions,
           "constructions": {n: c for n, c in ws.constructions.items() if not names or n in names}}
    return Outcome(out, f"report: {len(quivers)} quivers, {len(actions)} actions")


HANDLERS: dict[str, Callable[[Workspace, list[str]], Outcome]] = {
    "build": cmd_build,
    "verify-action": cmd_verify_action,
    "quotient": cmd_quotient,
    "skew": _construction_command("skew", "skew"),
    "coset": _construction_command("coset", "coset"),
    "relation": _construction_command("relation", "relation"),
    "classify": cmd_classify,
    "roundtrip": cmd_roundtrip,
    "iso": cmd_iso,
    "components": cmd_components,
    "ktheory": cmd_ktheory,
    "presentation": cmd_presentation,
    "report": cmd_report,
}


def run_command(ws: Workspace, command: str, names: list[str] | None = None) -> Outcome:
    if command not in HANDLERS:
        raise InvalidInput(f"unknown command {command!r}")
    return HANDLERS[command](ws, list(names or []))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverkit", description="Finite quivers with group actions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", action="append", required=True, metavar="FILE",
                   help="workspace document (repeatable; later files may refer to earlier names)")
    p.add_argument("--name", action="append", default=[], metavar="OBJ")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_const", const=True, default=None)
    mode.add_argument("--relaxed", dest="strict", action="store_const", const=False)
    p.add_argument("--output", metavar="FILE")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ws = Workspace()
        for path in args.input:
            try:
                with open(path, "rb") as fh:
                    data = fh.read()
            except OSError as exc:
                raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
            parse_document(data, source=path, strict=args.strict, ws=ws,
                           lenient_actions=args.command == "verify-action")
        outcome = run_command(ws, args.command, args.name)
    except QuiverkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - anything else is a bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ConsistencyError.exit_code
    text = dumps(outcome.report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(outcome.summary, file=sys.stderr)
    return outcome.code


if __name__ == "__main__":
    raise SystemExit(main())
