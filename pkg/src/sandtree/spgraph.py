"""Source-sink graphs and series-parallel (SP) graphs.

An :class:`SPGraph` carries its raw structure (vertices ``0..n-1``, an edge
multiset, source and sink) together with a canonical decomposition term.
The decomposition is flattened for associativity and the children of a
parallel node are sorted, so two SP graphs are isomorphic exactly when their
decompositions are identical.  That turns graph equality into a term
comparison.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from typing import Hashable, Iterable

from sandtree.errors import MalformedGraph, NotSeriesParallel

_TAG_LEAF, _TAG_PAR, _TAG_SEQ = 0, 1, 2


class Decomp:
    """Canonical decomposition of an SP graph."""

    __slots__ = ("_hash", "_key")

    def key(self) -> tuple:
        k = self._key
        if k is None:
            k = self._key = self._make_key()
        return k

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return render_decomp(self)


class Leaf(Decomp):
    __slots__ = ("label",)

    def __init__(self, label: str):
        if not isinstance(label, str) or not label:
            raise ValueError("edge label must be a nonempty string")
        self.label = label
        self._hash = hash((_TAG_LEAF, label))
        self._key = None

    def _make_key(self):
        return (_TAG_LEAF, self.label)

    def __eq__(self, other):
        return isinstance(other, Leaf) and other.label == self.label

    __hash__ = Decomp.__hash__

    def __repr__(self):
        return f"Leaf({self.label!r})"


class _Compound(Decomp):
    __slots__ = ("children",)
    tag: int

    def __init__(self, children: tuple[Decomp, ...]):
        self.children = children
        self._hash = hash((self.tag, children))
        self._key = None

    def _make_key(self):
        return (self.tag, tuple(c.key() for c in self.children))

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other._hash == self._hash
            and other.children == self.children
        )

    __hash__ = Decomp.__hash__

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self.children))})"


class Seq(_Compound):
    """Sequential composition; at least two children, none of them Seq."""

    __slots__ = ()
    tag = _TAG_SEQ


class Par(_Compound):
    """Parallel composition; at least two key-sorted children, none Par.

    Duplicates are kept: ``a || a`` has two edges.
    """

    __slots__ = ()
    tag = _TAG_PAR


def seq_of(parts: Iterable[Decomp]) -> Decomp:
    """Flattened sequential composition of ``parts`` (in order)."""
    flat: list[Decomp] = []
    for p in parts:
        if isinstance(p, Seq):
            flat.extend(p.children)
        else:
            flat.append(p)
    if not flat:
        raise ValueError("empty composition")
    if len(flat) == 1:
        return flat[0]
    return Seq(tuple(flat))


def par_of(parts: Iterable[Decomp]) -> Decomp:
    """Flattened, key-sorted parallel composition of ``parts``."""
    flat: list[Decomp] = []
    for p in parts:
        if isinstance(p, Par):
            flat.extend(p.children)
        else:
            flat.append(p)
    if not flat:
        raise ValueError("empty composition")
    if len(flat) == 1:
        return flat[0]
    flat.sort(key=Decomp.key)
    return Par(tuple(flat))


def render_decomp(d: Decomp) -> str:
    """Human-readable expression, e.g. ``(a || b) . c``."""
    if isinstance(d, Leaf):
        return d.label
    if isinstance(d, Seq):
        return " . ".join(
            f"({render_decomp(c)})" if isinstance(c, Par) else render_decomp(c)
            for c in d.children
        )
    return " || ".join(
        f"({render_decomp(c)})" if isinstance(c, Seq) else render_decomp(c)
        for c in d.children
    )


Edge = tuple[int, str, int]


class SPGraph:
    """An SP graph over basic-action labels.

    Vertices are the integers ``0..num_vertices-1``; ids carry no meaning and
    are renumbered by every composition.  Equality and hashing go through
    :attr:`canon`.
    """

    __slots__ = ("num_vertices", "edges", "source", "sink", "canon")

    def __init__(self, num_vertices: int, edges: tuple[Edge, ...], source: int,
                 sink: int, canon: Decomp):
        self.num_vertices = num_vertices
        self.edges = edges
        self.source = source
        self.sink = sink
        self.canon = canon

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def labels(self) -> list[str]:
        """Edge labels as a sorted list (the edge-label multiset)."""
        return sorted(label for _, label, _ in self.edges)

    def __eq__(self, other):
        if not isinstance(other, SPGraph):
            return NotImplemented
        return self.canon == other.canon

    def __hash__(self):
        return hash(self.canon)

    def __repr__(self):
        return f"SPGraph({render_decomp(self.canon)!r})"

    def __str__(self):
        return render_decomp(self.canon)


def edge_graph(label: str) -> SPGraph:
    """The single-edge graph ``-label->``."""
    return SPGraph(2, ((0, label, 1),), 0, 1, Leaf(label))


def seq_compose(g: SPGraph, h: SPGraph) -> SPGraph:
    """Glue ``h`` after ``g``: g's sink becomes h's source."""
    offset = g.num_vertices
    remap = {}
    for v in range(h.num_vertices):
        if v == h.source:
            remap[v] = g.sink
        else:
            remap[v] = offset
            offset += 1
    edges = g.edges + tuple((remap[u], b, remap[v]) for u, b, v in h.edges)
    return SPGraph(offset, edges, g.source, remap[h.sink],
                   seq_of((g.canon, h.canon)))


def par_compose(g: SPGraph, h: SPGraph) -> SPGraph:
    """Put ``g`` and ``h`` side by side, sharing source and sink."""
    offset = g.num_vertices
    remap = {}
    for v in range(h.num_vertices):
        if v == h.source:
            remap[v] = g.source
        elif v == h.sink:
            remap[v] = g.sink
        else:
            remap[v] = offset
            offset += 1
    edges = g.edges + tuple((remap[u], b, remap[v]) for u, b, v in h.edges)
    return SPGraph(offset, edges, g.source, g.sink,
                   par_of((g.canon, h.canon)))


def graphs_equal(g: SPGraph, h: SPGraph) -> bool:
    return g.canon == h.canon


def build(d: Decomp) -> SPGraph:
    """Construct the graph described by a decomposition."""
    if isinstance(d, Leaf):
        return edge_graph(d.label)
    compose = seq_compose if isinstance(d, Seq) else par_compose
    it = iter(d.children)
    g = build(next(it))
    for c in it:
        g = compose(g, build(c))
    return g


# Recognition ------------------------------------------------------------

def validate_source_sink(vertices, edges, source, sink) -> None:
    """Raise MalformedGraph unless the raw fields form a proper source-sink
    graph that is acyclic and has every vertex on a source-to-sink path."""
    vs = set(vertices)
    if len(vs) != len(list(vertices)):
        raise MalformedGraph("duplicate vertex ids")
    if source not in vs or sink not in vs:
        raise MalformedGraph("source and sink must be vertices")
    if source == sink:
        raise MalformedGraph("source and sink must differ")
    if not edges:
        raise MalformedGraph("graph has no edges")
    succ = defaultdict(list)
    pred = defaultdict(list)
    for u, label, v in edges:
        if u not in vs or v not in vs:
            raise MalformedGraph(f"edge {u!r} -{label}-> {v!r} uses an unknown vertex")
        if not isinstance(label, str) or not label:
            raise MalformedGraph("edge labels must be nonempty strings")
        succ[u].append(v)
        pred[v].append(u)
    if pred[source]:
        raise MalformedGraph("source has incoming edges")
    if succ[sink]:
        raise MalformedGraph("sink has outgoing edges")
    for v in vs:
        if v != source and not pred[v]:
            raise MalformedGraph(f"vertex {v!r} is a second source")
        if v != sink and not succ[v]:
            raise MalformedGraph(f"vertex {v!r} is a second sink")
    # Kahn's algorithm; leftover vertices sit on a cycle
    indeg = {v: len(pred[v]) for v in vs}
    queue = deque(v for v in vs if indeg[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if seen != len(vs):
        raise MalformedGraph("graph has a cycle")


def decompose(vertices, edges, source, sink) -> Decomp:
    """Recover the canonical decomposition of a raw source-sink graph.

    Repeatedly merges parallel edge bundles and series vertices (internal
    vertices with one incoming and one outgoing edge) until a single
    source-to-sink edge remains.  ``edges`` is an iterable of
    ``(tail, label, head)`` triples; vertex ids may be any hashables.
    """
    edges = list(edges)
    vertices = list(vertices)
    validate_source_sink(vertices, edges, source, sink)

    ends: dict[int, tuple[Hashable, Hashable]] = {}
    part: dict[int, Decomp] = {}
    out_e = defaultdict(set)
    in_e = defaultdict(set)
    for eid, (u, label, v) in enumerate(edges):
        ends[eid] = (u, v)
        part[eid] = Leaf(label)
        out_e[u].add(eid)
        in_e[v].add(eid)
    next_id = len(edges)

    def add_edge(u, v, d):
        nonlocal next_id
        eid = next_id
        next_id += 1
        ends[eid] = (u, v)
        part[eid] = d
        out_e[u].add(eid)
        in_e[v].add(eid)
        return eid

    def drop_edge(eid):
        u, v = ends.pop(eid)
        out_e[u].discard(eid)
        in_e[v].discard(eid)
        return part.pop(eid)

    changed = True
    while changed:
        changed = False
        bundles = defaultdict(list)
        for eid, uv in ends.items():
            bundles[uv].append(eid)
        for (u, v), ids in bundles.items():
            if len(ids) > 1:
                add_edge(u, v, par_of([drop_edge(e) for e in sorted(ids)]))
                changed = True
        for x in vertices:
            if x == source or x == sink:
                continue
            if len(in_e[x]) == 1 and len(out_e[x]) == 1:
                (e1,) = in_e[x]
                (e2,) = out_e[x]
                u = ends[e1][0]
                w = ends[e2][1]
                first = drop_edge(e1)
                second = drop_edge(e2)
                add_edge(u, w, seq_of((first, second)))
                changed = True
    if len(ends) == 1:
        (eid,) = ends
        if ends[eid] == (source, sink):
            return part[eid]
    raise NotSeriesParallel(
        f"reduction stalled with {len(ends)} edges remaining"
    )


def from_raw(vertices, edges, source, sink) -> SPGraph:
    """Build an SPGraph from raw fields, checking it is series-parallel."""
    edges = list(edges)
    canon = decompose(vertices, edges, source, sink)
    index = {v: i for i, v in enumerate(vertices)}
    return SPGraph(
        len(index),
        tuple((index[u], b, index[v]) for u, b, v in edges),
        index[source],
        index[sink],
        canon,
    )


def graph_to_obj(g: SPGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"from": u, "label": b, "to": v} for u, b, v in g.edges],
        "source": g.source,
        "sink": g.sink,
    }


def graph_from_obj(obj: dict) -> SPGraph:
    try:
        edges = [(e["from"], e["label"], e["to"]) for e in obj["edges"]]
        return from_raw(obj["vertices"], edges, obj["source"], obj["sink"])
    except (KeyError, TypeError) as exc:
        raise MalformedGraph(f"bad raw graph object: {exc}") from exc


def graph_to_json(g: SPGraph) -> str:
    return json.dumps(graph_to_obj(g))


def graph_from_json(text: str) -> SPGraph:
    return graph_from_obj(json.loads(text))


def graph_to_dot(g: SPGraph, name: str = "G") -> str:
    """DOT digraph with labelled edges; source and sink are filled."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in g.vertices:
        if v == g.source:
            lines.append(f'  v{v} [label="s", style=filled, fillcolor=palegreen];')
        elif v == g.sink:
            lines.append(f'  v{v} [label="z", style=filled, fillcolor=lightpink];')
        else:
            lines.append(f'  v{v} [label="", shape=circle];')
    for u, b, v in g.edges:
        lines.append(f'  v{u} -> v{v} [label="{b}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
