"""Oriented rewrite system for SAND attack trees and normal forms.

Rules (left to right), applied modulo commutativity of OR and AND::

    E3    OR(X, OR(Y))         -> OR(X, Y)
    E4    AND(X, AND(Y))       -> AND(X, Y)
    E4'   SAND(X, SAND(Y), Z)  -> SAND(X, Y, Z)
    E5    OR(A)                -> A
    E6    AND(A)               -> A
    E6'   SAND(A)              -> A
    E10   AND(X, OR(Y))        -> OR(AND(X, Y1), ..., AND(X, Yl))
    E10'  SAND(X, OR(Y), Z)    -> OR(SAND(X, Y1, Z), ..., SAND(X, Yl, Z))
    E11   OR(A, A, X)          -> OR(A, X)

Every rule strictly lowers :func:`sandtree.terms.norm`, so rewriting always
terminates, and the system is confluent: whatever the strategy, the result
is the same once OR/AND children are sorted.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Iterator, NamedTuple

from sandtree.errors import CapExceeded
from sandtree.syntax import serialize
from sandtree.terms import Action, And, Or, Sand, Term, sort_commutative

RULE_IDS = ("E3", "E4", "E4'", "E5", "E6", "E6'", "E10", "E10'", "E11")

INNERMOST = "leftmost-innermost"
OUTERMOST = "leftmost-outermost"
RANDOM = "random"
STRATEGIES = (INNERMOST, OUTERMOST, RANDOM)

DEFAULT_NODE_CAP = 100_000

_FLATTEN = {Or: "E3", And: "E4", Sand: "E4'"}
_UNARY = {Or: "E5", And: "E6", Sand: "E6'"}
_DISTRIBUTE = {And: "E10", Sand: "E10'"}


class Step(NamedTuple):
    rule: str
    position: tuple[int, ...]
    term: Term


def _redexes_at(t: Term) -> Iterator[tuple[str, int | None]]:
    """Yield ``(rule, child_index)`` for every rule applicable at the root."""
    if isinstance(t, Action):
        return
    op = type(t)
    kids = t.children
    if len(kids) == 1:
        yield _UNARY[op], None
    for i, c in enumerate(kids):
        if type(c) is op:
            yield _FLATTEN[op], i
    if op is Or:
        seen = set()
        for i, c in enumerate(kids):
            s = sort_commutative(c)
            if s in seen:
                yield "E11", i
            else:
                seen.add(s)
    else:
        for i, c in enumerate(kids):
            if isinstance(c, Or):
                yield _DISTRIBUTE[op], i


def _apply(t: Term, rule: str, i: int | None) -> Term:
    if i is None:  # E5, E6, E6'
        return t.children[0]
    kids = t.children
    if rule in ("E3", "E4", "E4'"):
        return type(t)(*kids[:i], *kids[i].children, *kids[i + 1:])
    if rule == "E11":
        return Or(*kids[:i], *kids[i + 1:])
    # E10, E10': the OR child is replaced by each of its alternatives in turn
    op = type(t)
    before, after = kids[:i], kids[i + 1:]
    return Or(*(op(*before, y, *after) for y in kids[i].children))


def _redex_count(t: Term) -> int:
    """Number of (position, rule) redexes in ``t``; cached on each node."""
    n = t._nredex
    if n is None:
        n = sum(1 for _ in _redexes_at(t))
        n += sum(_redex_count(k) for k in t.children)
        t._nredex = n
    return n


def _is_clean(t: Term) -> bool:
    """True if no rule applies anywhere in ``t``.  Stops at the first redex;
    only a clean verdict is cached (as a zero redex count)."""
    n = t._nredex
    if n is not None:
        return n == 0
    if next(_redexes_at(t), None) is not None:
        return False
    if all(_is_clean(c) for c in t.children):
        t._nredex = 0
        return True
    return False


def _find_innermost(t, path):
    if _is_clean(t):
        return None
    for i, c in enumerate(getattr(t, "children", ())):
        hit = _find_innermost(c, path + (i,))
        if hit is not None:
            return hit
    return path, next(_redexes_at(t))


def _find_outermost(t, path):
    if _is_clean(t):
        return None
    first = next(_redexes_at(t), None)
    if first is not None:
        return path, first
    for i, c in enumerate(t.children):
        hit = _find_outermost(c, path + (i,))
        if hit is not None:
            return hit
    raise AssertionError("redex count out of sync")


def _find_random(t, rng):
    """Draw one redex uniformly from all redexes of ``t``."""
    total = _redex_count(t)
    if not total:
        return None
    r = rng.randrange(total)
    path = ()
    while True:
        local = list(_redexes_at(t))
        if r < len(local):
            return path, local[r]
        r -= len(local)
        for i, c in enumerate(t.children):
            n = _redex_count(c)
            if r < n:
                t = c
                path += (i,)
                break
            r -= n


def _replace(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    i = path[0]
    kids = list(t.children)
    kids[i] = _replace(kids[i], path[1:], new)
    return type(t)(*kids)


def _subterm(t: Term, path):
    for i in path:
        t = t.children[i]
    return t


def rewrite_step(t: Term, strategy: str = INNERMOST,
                 rng: random.Random | None = None) -> Step | None:
    """Apply one rule somewhere in ``t``; ``None`` if ``t`` is irreducible.

    ``strategy`` picks the redex: the leftmost-innermost one, the
    leftmost-outermost one, or (``"random"``) one drawn uniformly from all
    redexes with ``rng``.
    """
    if strategy == INNERMOST:
        hit = _find_innermost(t, ())
    elif strategy == OUTERMOST:
        hit = _find_outermost(t, ())
    elif strategy == RANDOM:
        hit = _find_random(t, rng or random.Random())
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if hit is None:
        return None
    path, (rule, i) = hit
    new_sub = _apply(_subterm(t, path), rule, i)
    return Step(rule, path, _replace(t, path, new_sub))


@dataclass
class RewriteTrace:
    """Record of a rewrite sequence; ``steps[k].term`` is the term after step k."""

    start: Term
    steps: list[Step] = field(default_factory=list)

    @property
    def result(self) -> Term:
        return self.steps[-1].term if self.steps else self.start

    def to_jsonl(self) -> str:
        return "".join(
            json.dumps({"rule": s.rule, "position": list(s.position),
                        "term": serialize(s.term)}) + "\n"
            for s in self.steps
        )


def rewrite_sequence(t: Term, strategy: str = INNERMOST, seed: int | None = None,
                     max_nodes: int | None = DEFAULT_NODE_CAP) -> Iterator[Step]:
    """Yield successive rewrite steps until no rule applies."""
    rng = random.Random(seed) if strategy == RANDOM else None
    while True:
        step = rewrite_step(t, strategy, rng)
        if step is None:
            return
        if max_nodes is not None and step.term.size > max_nodes:
            raise CapExceeded("term size", max_nodes, step.term.size)
        yield step
        t = step.term


def normalize(t: Term, strategy: str = INNERMOST, seed: int | None = None,
              max_nodes: int | None = DEFAULT_NODE_CAP) -> Term:
    """Rewrite to the unique normal form, with OR/AND children sorted."""
    for step in rewrite_sequence(t, strategy, seed, max_nodes):
        t = step.term
    return sort_commutative(t)


def trace_normalize(t: Term, strategy: str = INNERMOST, seed: int | None = None,
                    max_nodes: int | None = DEFAULT_NODE_CAP) -> RewriteTrace:
    trace = RewriteTrace(t)
    trace.steps.extend(rewrite_sequence(t, strategy, seed, max_nodes))
    return trace


# Single-pass normalizer --------------------------------------------------

def _combine(op, choice):
    flat = []
    for alt in choice:
        if type(alt) is op:
            flat.extend(alt.children)
        else:
            flat.append(alt)
    if len(flat) == 1:
        return flat[0]
    if op is And:
        flat.sort(key=Term.key)
    return op(*flat)


def _alternatives(t: Term, cap, memo) -> list[Term]:
    """Sorted, duplicate-free OR-free alternatives of ``t``."""
    hit = memo.get(t)
    if hit is not None:
        return hit
    if isinstance(t, Action):
        alts = [t]
    else:
        parts = [_alternatives(c, cap, memo) for c in t.children]
        if isinstance(t, Or):
            merged = {}
            for p in parts:
                for a in p:
                    merged[a] = a
            alts = list(merged)
        else:
            if cap is not None:
                combos = prod(len(p) for p in parts)
                size = combos + sum(
                    sum(a.size for a in p) * (combos // len(p)) for p in parts)
                if size > cap:
                    raise CapExceeded("term size", cap, size)
            op = type(t)
            alts = list(dict.fromkeys(_combine(op, ch) for ch in product(*parts)))
        alts.sort(key=Term.key)
    memo[t] = alts
    return alts


def canonical_normalize(t: Term, max_nodes: int | None = DEFAULT_NODE_CAP) -> Term:
    """Normal form computed bottom-up in one pass (flatten, distribute,
    deduplicate, sort).  Always agrees with :func:`normalize`."""
    alts = _alternatives(t, max_nodes, {})
    if len(alts) == 1:
        return alts[0]
    out = Or(*alts)
    if max_nodes is not None and out.size > max_nodes:
        raise CapExceeded("term size", max_nodes, out.size)
    return out


# Normal-form recognition -------------------------------------------------

def _is_alternation(t: Term) -> bool:
    if isinstance(t, Action):
        return True
    if isinstance(t, Or) or len(t.children) < 2:
        return False
    for c in t.children:
        if type(c) is type(t) or isinstance(c, Or):
            return False
        if not _is_alternation(c):
            return False
    return True


def is_normal_form(t: Term) -> bool:
    """True iff ``t`` is an AND/SAND alternation, or an OR of at least two
    pairwise-distinct such terms."""
    if isinstance(t, Or):
        if len(t.children) < 2:
            return False
        if not all(_is_alternation(c) for c in t.children):
            return False
        distinct = {sort_commutative(c) for c in t.children}
        return len(distinct) == len(t.children)
    return _is_alternation(t)
