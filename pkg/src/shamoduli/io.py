"""Exact JSON and DOT serialization. Rationals are written as "p/q" strings."""
from __future__ import annotations

import json
from dataclasses import replace
from typing import Any, Iterable, Optional

from .errors import InvalidSha, PreconditionError
from .projgeom import LineArrangement, ProjLine, ProjPoint
from .rational import fmt_all, rationals
from .sha import DualGraph, Sha, ShaComponent, dual_graph
from .weights import WeightVector
from .wonderful import StratumLabel, stratum_poset


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _triple(xs) -> list[str]:
    return fmt_all(xs)


# -- arrangements and weights ----------------------------------------------


def arrangement_to_json(arr: LineArrangement) -> dict:
    return {
        "n": arr.n,
        "lines": [_triple(l.coeffs) for l in arr.lines],
        "special_line": _triple(arr.special_line.coeffs),
    }


def arrangement_from_json(d: dict) -> LineArrangement:
    return LineArrangement(d["n"], tuple(ProjLine(rationals(c)) for c in d["lines"]),
                           ProjLine(rationals(d.get("special_line", ["1", "0", "0"]))))


def weights_to_json(w: WeightVector) -> list[str]:
    return fmt_all(w)


# -- shas --------------------------------------------------------------------


def sha_to_json(x: Sha) -> dict:
    def node(v: int) -> dict:
        c = x.components[v]
        parent = None if c.parent is None else x.components[c.parent]
        attach = None if parent is None else _triple(dict(parent.attachments)[v].coords)
        return {
            "id": v,
            "markings": list(x.markings(v)),
            "attachment": attach,
            "moduli": None if c.moduli is None else fmt_all(c.moduli),
            "children": [node(k) for k in x.children(v)],
        }

    return {
        "n": x.n,
        "tree": node(0),
        "plane_models": [[_triple(l.coeffs) for l in c.plane_model] for c in x.components],
    }


def sha_from_json(d: dict) -> Sha:
    n = d["n"]
    models = d["plane_models"]
    comps: dict[int, ShaComponent] = {}
    attach: dict[int, list[tuple[int, ProjPoint]]] = {}

    def visit(node: dict, parent: Optional[int]) -> None:
        v = node["id"]
        if v in comps or not 0 <= v < len(models):
            raise InvalidSha(f"bad component id {v}")
        plane = [ProjLine(rationals(c)) for c in models[v]]
        if len(plane) != n:
            raise InvalidSha(f"component {v} needs {n} line entries")
        lines = [i for i in range(1, n + 1) if plane[i - 1] != ProjLine(1, 0, 0)]
        mod = node.get("moduli")
        comps[v] = ShaComponent.build(v, n, lines, {i: plane[i - 1] for i in lines}, parent,
                                      None if mod is None else rationals(mod))
        if parent is not None:
            if node.get("attachment") is None:
                raise InvalidSha(f"component {v} lacks its attachment point")
            attach.setdefault(parent, []).append((v, ProjPoint(rationals(node["attachment"]))))
        for child in node.get("children", []):
            visit(child, v)

    visit(d["tree"], None)
    if sorted(comps) != list(range(len(models))):
        raise InvalidSha("component ids must be 0..k-1")
    built = tuple(replace(comps[v], attachments=tuple(attach.get(v, ()))) for v in range(len(models)))
    x = Sha(n, built)
    x.validate()

    def check(node: dict) -> None:
        if list(x.markings(node["id"])) != list(node["markings"]):
            raise InvalidSha(f"markings of component {node['id']} disagree with the plane models")
        for child in node.get("children", []):
            check(child)

    check(d["tree"])
    return x


def load_sha(path: str) -> Sha:
    with open(path) as fh:
        try:
            return sha_from_json(json.load(fh))
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed sha file {path}: {exc}") from exc


def dual_graph_to_json(g: DualGraph) -> dict:
    return {
        "root": g.root,
        "vertices": [{"id": v, "markings": list(m)} for v, m in g.markings],
        "edges": [list(e) for e in g.edges],
    }


def _set_label(idx: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in idx) + "}"


def dual_graph_to_dot(g: DualGraph) -> str:
    out = ["graph dual {"]
    for v, m in g.markings:
        shape = "doublecircle" if v == g.root else "circle"
        out.append(f'  v{v} [label="{_set_label(m)}", shape={shape}];')
    for a, b in g.edges:
        out.append(f"  v{a} -- v{b};")
    out.append("}")
    return "\n".join(out) + "\n"


def sha_to_dot(x: Sha) -> str:
    return dual_graph_to_dot(dual_graph(x))


# -- strata -------------------------------------------------------------------


def label_to_json(label: StratumLabel) -> list[list[int]]:
    return [list(J) for J in label.factors]


def _label_name(label: StratumLabel) -> str:
    return "open" if not label.factors else " ".join(_set_label(J) for J in label.factors)


def strata_to_dot(labels: list[StratumLabel]) -> str:
    ids = {L: k for k, L in enumerate(labels)}
    out = ["digraph strata {", "  rankdir=TB;"]
    for L, k in ids.items():
        out.append(f'  s{k} [label="{_label_name(L)}"];')
    for big, small in stratum_poset(labels):
        out.append(f"  s{ids[big]} -> s{ids[small]};")
    out.append("}")
    return "\n".join(out) + "\n"
