"""JSON documents for graphs, colourings and flexes.

Serialization is deterministic (sorted keys, two-space indent, trailing
newline), so a document written by this module parses and re-serializes to
the same bytes. Real numbers are written as strings with 17 significant
digits, rationals as "p/q" strings.
"""

from __future__ import annotations

import json
import math

from .colouring import BLUE, RED, Colouring
from .construct import FlexKind, ParametricFlex
from .gaincore import GainGraph, GainGraphError


class DocumentError(ValueError):
    pass


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise DocumentError(f"field {key!r} has the wrong type")
    return value


# graphs


def graph_to_dict(G):
    return {
        "k": G.k,
        "vertices": list(G.vertices),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head, "gain": list(e.gain)} for e in G.edges],
    }


def graph_from_dict(d):
    k = _need(d, "k", int)
    vertices = _need(d, "vertices", list)
    edges = _need(d, "edges", list)
    if not all(isinstance(v, str) for v in vertices):
        raise DocumentError("vertex ids must be strings")
    rows = []
    for e in edges:
        eid, tail, head = _need(e, "id", str), _need(e, "tail", str), _need(e, "head", str)
        gain = _need(e, "gain", list)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in gain):
            raise DocumentError(f"edge {eid}: gains must be integers")
        rows.append((eid, tail, head, tuple(gain)))
    try:
        return GainGraph(k, vertices, rows)
    except GainGraphError as exc:
        raise DocumentError(str(exc)) from exc


def serialize_graph(G):
    return dumps(graph_to_dict(G))


def parse_graph(text):
    return graph_from_dict(_load(text))


# colourings


def colouring_to_dict(delta):
    return {"red": sorted(delta.edges(RED)), "blue": sorted(delta.edges(BLUE))}


def colouring_from_dict(d, G=None):
    red = _need(d, "red", list)
    blue = _need(d, "blue", list)
    if set(red) & set(blue):
        raise DocumentError("an edge is both red and blue")
    delta = Colouring.from_sets(red, blue)
    if G is not None:
        try:
            delta.check_total(G)
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
    return delta


def serialize_colouring(delta):
    return dumps(colouring_to_dict(delta))


def parse_colouring(text, G=None):
    return colouring_from_dict(_load(text), G)


# flexes


def _real(x):
    return format(float(x), ".17g")


def flex_to_dict(flex):
    out = {
        "kind": flex.kind.value,
        "k": flex.k,
        "vertices": list(flex.vertices),
        "domain": [_real(flex.domain[0]), _real(flex.domain[1])],
        "params": flex.params,
    }
    if flex.inner is not None:
        out["inner"] = flex_to_dict(flex.inner)
    return out


def flex_from_dict(d):
    try:
        kind = FlexKind(_need(d, "kind", str))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    domain = _need(d, "domain", list)
    if len(domain) != 2:
        raise DocumentError("domain must have two entries")
    try:
        lo, hi = (float(x) for x in domain)
    except (TypeError, ValueError) as exc:
        raise DocumentError("domain entries must be numbers") from exc
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DocumentError("domain must be finite")
    inner = flex_from_dict(d["inner"]) if "inner" in d else None
    if kind is FlexKind.HENNEBERG_CIRCLE and inner is None:
        raise DocumentError("Henneberg flex needs an inner flex")
    return ParametricFlex(kind, _need(d, "k", int), _need(d, "vertices", list), _need(d, "params", dict), (lo, hi), inner)


def placement_to_dict(frame):
    return {
        "p": {v: [_real(x) for x in frame.P[i]] for i, v in enumerate(frame.vertices)},
        "L": [[_real(x) for x in row] for row in frame.L],
    }


class FlexDocument:
    """A graph, an optional colouring, a recipe id, a flex and its base frame."""

    def __init__(self, graph, flex, recipe=None, colouring=None, base=None):
        self.graph = graph
        self.flex = flex
        self.recipe = recipe
        self.colouring = colouring
        self.base = base if base is not None else placement_to_dict(flex.base())

    def to_dict(self):
        out = {
            "format": "periodicflex-flex",
            "graph": graph_to_dict(self.graph),
            "flex": flex_to_dict(self.flex),
            "base": self.base,
            "recipe": self.recipe,
        }
        if self.colouring is not None:
            out["colouring"] = colouring_to_dict(self.colouring)
        return out

    def __eq__(self, other):
        return isinstance(other, FlexDocument) and self.to_dict() == other.to_dict()

    def base_mismatch(self):
        """Largest difference between the stored base frame and the flex at the domain start."""
        try:
            stored = self.base
            frame = self.flex.base()
            worst = 0.0
            for i, v in enumerate(frame.vertices):
                for a, b in zip(frame.P[i], stored["p"][v]):
                    worst = max(worst, abs(a - float(b)))
            for row, srow in zip(frame.L, stored["L"]):
                for a, b in zip(row, srow):
                    worst = max(worst, abs(a - float(b)))
            return worst
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad base placement: {exc}") from exc


def serialize_flex(doc):
    return dumps(doc.to_dict())


def parse_flex(text):
    d = _load(text)
    if _need(d, "format", str) != "periodicflex-flex":
        raise DocumentError("not a flex document")
    G = graph_from_dict(_need(d, "graph", dict))
    flex = flex_from_dict(_need(d, "flex", dict))
    if list(flex.vertices) != list(G.vertices) or flex.k != G.k:
        raise DocumentError("flex vertices or k do not match the graph")
    delta = colouring_from_dict(d["colouring"], G) if "colouring" in d else None
    base = _need(d, "base", dict)
    doc = FlexDocument(G, flex, d.get("recipe"), delta, base)
    try:
        doc.flex.base()
    except (KeyError, TypeError, ValueError, ZeroDivisionError, IndexError) as exc:
        raise DocumentError(f"flex parameters cannot be evaluated: {exc}") from exc
    doc.base_mismatch()
    return doc

