"""SP semantics of SAND attack trees and its inverse on normal forms.

A tree denotes a finite set of SP graphs, one per way of carrying out the
attack.  OR takes the union, AND composes one alternative from each child in
parallel, SAND composes them in sequence.
"""

from __future__ import annotations

import json
from itertools import product
from typing import Iterable, Iterator

from sandtree.errors import CapExceeded, EmptyGraphSet, NotStandardTree
from sandtree.spgraph import (
    Decomp,
    Leaf,
    Par,
    SPGraph,
    edge_graph,
    graph_to_dot,
    graph_to_obj,
    par_compose,
    seq_compose,
)
from sandtree.terms import And, Action, Or, Sand, Term, is_standard, sort_commutative

DEFAULT_GRAPH_CAP = 10_000


class GraphSet:
    """A set of SP graphs, deduplicated by graph equality.

    Iteration order is sorted by decomposition key, so listings are
    reproducible.  ``cap`` bounds the number of members (``None`` for no cap).
    """

    def __init__(self, graphs: Iterable[SPGraph] = (), cap: int | None = DEFAULT_GRAPH_CAP):
        self.cap = cap
        self._members: dict[Decomp, SPGraph] = {}
        for g in graphs:
            self.add(g)

    def add(self, g: SPGraph) -> None:
        if g.canon in self._members:
            return
        if self.cap is not None and len(self._members) >= self.cap:
            raise CapExceeded("graph set", self.cap, len(self._members) + 1)
        self._members[g.canon] = g

    def __len__(self):
        return len(self._members)

    def __iter__(self) -> Iterator[SPGraph]:
        for k in sorted(self._members, key=Decomp.key):
            yield self._members[k]

    def __contains__(self, g):
        return isinstance(g, SPGraph) and g.canon in self._members

    def canons(self) -> frozenset[Decomp]:
        return frozenset(self._members)

    def __eq__(self, other):
        if not isinstance(other, GraphSet):
            return NotImplemented
        return self._members.keys() == other._members.keys()

    def __repr__(self):
        return "GraphSet({" + ", ".join(str(g) for g in self) + "})"


def sp_semantics(t: Term, cap: int | None = DEFAULT_GRAPH_CAP) -> GraphSet:
    """The set of SP graphs denoted by ``t``.

    Raises CapExceeded before computing any AND/SAND product (or union)
    whose size would exceed ``cap``.
    """
    if isinstance(t, Action):
        return GraphSet([edge_graph(t.label)], cap)
    parts = [sp_semantics(c, cap) for c in t.children]
    if isinstance(t, Or):
        out = GraphSet(cap=cap)
        for p in parts:
            for g in p:
                out.add(g)
        return out
    compose = par_compose if isinstance(t, And) else seq_compose
    acc = list(parts[0])
    for p in parts[1:]:
        if cap is not None and len(acc) * len(p) > cap:
            raise CapExceeded("graph set", cap, len(acc) * len(p))
        acc = list(GraphSet((compose(g, h) for g, h in product(acc, p)), cap))
    return GraphSet(acc, cap)


def multiset_semantics(t: Term, cap: int | None = DEFAULT_GRAPH_CAP) -> frozenset[tuple[str, ...]]:
    """Set of action multisets for a SAND-free tree.

    Each multiset is a sorted tuple of labels, so ``('a', 'a')`` and
    ``('a',)`` are distinct members.
    """
    if not is_standard(t):
        raise NotStandardTree("multiset semantics is only defined for SAND-free trees")
    return frozenset(tuple(g.labels()) for g in sp_semantics(t, cap))


def term_of_decomp(d: Decomp) -> Term:
    if isinstance(d, Leaf):
        return Action(d.label)
    op = And if isinstance(d, Par) else Sand
    return op(*(term_of_decomp(c) for c in d.children))


def term_of_graphset(gs: GraphSet | Iterable[SPGraph]) -> Term:
    """The normal-form term whose semantics is exactly ``gs``."""
    alts = sorted({sort_commutative(term_of_decomp(g.canon)) for g in gs},
                  key=Term.key)
    if not alts:
        raise EmptyGraphSet("no term denotes the empty set of graphs")
    if len(alts) == 1:
        return alts[0]
    return Or(*alts)


def semantically_equal(t1: Term, t2: Term, cap: int | None = DEFAULT_GRAPH_CAP) -> bool:
    """Compare two trees by enumerating their graph sets."""
    return sp_semantics(t1, cap) == sp_semantics(t2, cap)


def equivalent(t1: Term, t2: Term, max_nodes: int | None = None) -> bool:
    """Decide whether two trees denote the same set of SP graphs.

    Works on normal forms; :func:`semantically_equal` is the enumerating
    cross-check.
    """
    from sandtree.rewrite import DEFAULT_NODE_CAP, canonical_normalize

    if max_nodes is None:
        max_nodes = DEFAULT_NODE_CAP
    return canonical_normalize(t1, max_nodes) == canonical_normalize(t2, max_nodes)


def graphset_to_obj(gs: GraphSet) -> list[dict]:
    return [graph_to_obj(g) for g in gs]


def graphset_to_json(gs: GraphSet) -> str:
    return json.dumps(graphset_to_obj(gs))


def graphset_to_dot(gs: GraphSet) -> str:
    """One digraph per member, concatenated."""
    return "".join(graph_to_dot(g, name=f"G{i}") for i, g in enumerate(gs))
