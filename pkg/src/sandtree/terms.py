"""Term algebra for SAND attack trees.

A tree is built from basic actions and the three refinements ``OR``,
``AND`` and ``SAND``::

    t ::= b | OR(t, ..., t) | AND(t, ..., t) | SAND(t, ..., t)

Terms are immutable and hashable.  Every operator node has at least one
child.  Structural hash, node count and the ordering key are cached on the
instance, so repeated comparisons on shared subtrees stay cheap.
"""

from __future__ import annotations

import re
from math import prod
from typing import Iterable, Iterator

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*\Z")
RESERVED = frozenset({"OR", "AND", "SAND"})

# Tag order used by the canonical ordering: Action < Or < And < Sand.
_TAG_ACTION, _TAG_OR, _TAG_AND, _TAG_SAND = 0, 1, 2, 3


class Term:
    """Base class of all attack-tree terms."""

    __slots__ = ("_hash", "_size", "_key", "_sorted", "_nredex", "_norm")

    tag: int
    name: str

    @property
    def size(self) -> int:
        """Number of nodes in the tree."""
        return self._size

    def key(self) -> tuple:
        """Total-order key; equal keys mean structurally identical terms."""
        k = self._key
        if k is None:
            k = self._key = self._make_key()
        return k

    def _make_key(self) -> tuple:
        raise NotImplementedError

    def __lt__(self, other: Term) -> bool:
        return self.key() < other.key()

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        from sandtree.syntax import serialize

        return serialize(self)

    def actions(self) -> Iterator[str]:
        """Yield every action label, left to right, with repetitions."""
        stack = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Action):
                yield node.label
            else:
                stack.extend(reversed(node.children))


class Action(Term):
    """A leaf labelled with a basic action."""

    __slots__ = ("label",)
    tag = _TAG_ACTION
    name = "ACTION"

    def __init__(self, label: str):
        if not isinstance(label, str) or not IDENT_RE.match(label):
            raise ValueError(f"invalid action label: {label!r}")
        if label in RESERVED:
            raise ValueError(f"reserved word used as action label: {label!r}")
        self.label = label
        self._hash = hash((_TAG_ACTION, label))
        self._size = 1
        self._key = None
        self._sorted = self
        self._nredex = 0
        self._norm = 1

    def _make_key(self):
        return (_TAG_ACTION, self.label)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Action) and other.label == self.label

    __hash__ = Term.__hash__

    def __repr__(self):
        return f"Action({self.label!r})"


class Operator(Term):
    """An ``OR``/``AND``/``SAND`` node with one or more ordered children."""

    __slots__ = ("children",)
    commutative = False

    def __init__(self, *children: Term):
        if len(children) == 1 and not isinstance(children[0], Term):
            children = tuple(children[0])
        if not children:
            raise ValueError(f"{self.name} needs at least one child")
        for c in children:
            if not isinstance(c, Term):
                raise TypeError(f"child of {self.name} is not a Term: {c!r}")
        self.children: tuple[Term, ...] = tuple(children)
        self._hash = hash((self.tag, self.children))
        self._size = 1 + sum(c._size for c in children)
        self._key = None
        self._sorted = None
        self._nredex = None
        self._norm = None

    def _make_key(self):
        return (self.tag, tuple(c.key() for c in self.children))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is type(self)
            and other._hash == self._hash
            and other.children == self.children
        )

    __hash__ = Term.__hash__

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self.children))})"

    def __len__(self):
        return len(self.children)

    def __iter__(self):
        return iter(self.children)

    def __getitem__(self, i):
        return self.children[i]

    def with_children(self, children: Iterable[Term]) -> Operator:
        return type(self)(*children)


class Or(Operator):
    __slots__ = ()
    tag = _TAG_OR
    name = "OR"
    commutative = True


class And(Operator):
    __slots__ = ()
    tag = _TAG_AND
    name = "AND"
    commutative = True


class Sand(Operator):
    __slots__ = ()
    tag = _TAG_SAND
    name = "SAND"


OPERATORS: dict[str, type[Operator]] = {"OR": Or, "AND": And, "SAND": Sand}


def order_key(t: Term) -> tuple:
    return t.key()


def sort_commutative(t: Term) -> Term:
    """Sort the children of every OR and AND node; SAND order is kept.

    The result is cached on the input, so calling this repeatedly on shared
    subterms costs nothing after the first time.
    """
    s = t._sorted
    if s is not None:
        return s
    kids = [sort_commutative(c) for c in t.children]
    if t.commutative:
        kids.sort(key=order_key)
    if all(a is b for a, b in zip(kids, t.children)):
        s = t
    else:
        s = type(t)(*kids)
    s._sorted = s
    t._sorted = s
    return s


def norm(t: Term) -> int:
    """Termination norm: 1 for actions, sum + 2 for OR, 2 * product otherwise.

    Python integers are unbounded, so large products never overflow.  The
    value is cached on each node.
    """
    n = t._norm
    if n is None:
        values = [norm(c) for c in t.children]
        n = sum(values) + 2 if isinstance(t, Or) else 2 * prod(values)
        t._norm = n
    return n


def is_standard(t: Term) -> bool:
    """True iff ``t`` has no SAND node."""
    if isinstance(t, Sand):
        return False
    if isinstance(t, Action):
        return True
    return all(is_standard(c) for c in t.children)


def node_count(t: Term) -> int:
    return t.size


def depth(t: Term) -> int:
    if isinstance(t, Action):
        return 1
    return 1 + max(depth(c) for c in t.children)
