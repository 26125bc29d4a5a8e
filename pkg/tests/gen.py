"""Seeded random generators for terms, normal forms and SP graphs."""

import random

from sandtree.spgraph import edge_graph, par_compose, seq_compose
from sandtree.terms import Action, And, Or, Sand

ACTIONS = ("a", "b", "c", "d", "e")


def random_term(rng, max_depth=6, n_actions=5, max_arity=4, sand=True, depth=1):
    """Random tree of depth <= max_depth over the first n_actions labels.

    Leaves become more likely deeper down so the distributive blowup of
    normalization stays bounded.
    """
    if depth >= max_depth or rng.random() < 0.1 + 0.12 * depth:
        return Action(rng.choice(ACTIONS[:n_actions]))
    ops = (Or, And, Sand) if sand else (Or, And)
    op = rng.choice(ops)
    k = rng.randint(1, max_arity)
    return op(*(random_term(rng, max_depth, n_actions, max_arity, sand, depth + 1)
                for _ in range(k)))


def random_alternation(rng, op=None, depth=1, max_depth=4, n_actions=5, max_arity=3):
    """Random OR-free term in strict AND/SAND alternation (arity >= 2)."""
    if op is None:
        op = rng.choice((And, Sand))
    if depth >= max_depth or rng.random() < 0.3 + 0.2 * depth:
        return Action(rng.choice(ACTIONS[:n_actions]))
    inner = Sand if op is And else And
    k = rng.randint(2, max_arity)
    return op(*(random_alternation(rng, inner, depth + 1, max_depth, n_actions, max_arity)
                for _ in range(k)))


def random_normal_form(rng, max_alts=4):
    """Random term of the normal-form grammar (children in arbitrary order)."""
    alts = []
    for _ in range(rng.randint(1, max_alts)):
        a = random_alternation(rng)
        if all(a != b for b in alts):
            alts.append(a)
    if len(alts) == 1:
        return alts[0]
    from sandtree.terms import sort_commutative

    # drop alternatives equal modulo commutativity
    uniq, seen = [], set()
    for a in alts:
        s = sort_commutative(a)
        if s not in seen:
            seen.add(s)
            uniq.append(a)
    return uniq[0] if len(uniq) == 1 else Or(*uniq)


def random_sp_graph(rng, size=None, n_actions=5):
    """Random SP graph built by composition from ``size`` edges."""
    if size is None:
        size = rng.randint(1, 8)
    if size == 1:
        return edge_graph(rng.choice(ACTIONS[:n_actions]))
    left = rng.randint(1, size - 1)
    compose = rng.choice((seq_compose, par_compose))
    return compose(random_sp_graph(rng, left, n_actions),
                   random_sp_graph(rng, size - left, n_actions))


def rng_for(seed):
    return random.Random(seed)


def scramble(t, rng, rounds=3):
    """Return a tree equivalent to ``t`` by applying axioms right to left
    (wrapping in unary nodes, re-nesting, duplicating OR children) and by
    shuffling OR/AND children."""
    for _ in range(rounds):
        t = _scramble_once(t, rng)
    return t


def _scramble_once(t, rng):
    if isinstance(t, Action):
        kids = None
    else:
        kids = [_scramble_once(c, rng) for c in t.children]
        if t.commutative:
            rng.shuffle(kids)
        if len(kids) >= 3 and rng.random() < 0.3:
            # re-nest a contiguous run:  OP(X, Y, Z) <- OP(X, OP(Y), Z)
            i = rng.randrange(len(kids) - 1)
            j = rng.randrange(i + 2, len(kids) + 1)
            if j - i < len(kids):
                kids[i:j] = [type(t)(*kids[i:j])]
        if isinstance(t, Or) and rng.random() < 0.3:
            kids.insert(rng.randrange(len(kids) + 1), rng.choice(kids))
        t = type(t)(*kids)
    r = rng.random()
    if r < 0.1:
        t = Or(t)
    elif r < 0.2:
        t = And(t)
    elif r < 0.3:
        t = Sand(t)
    return t


def brute_isomorphic(g, h):
    """Label-preserving vertex bijection search; only for small graphs."""
    from collections import Counter
    from itertools import permutations

    if g.num_vertices != h.num_vertices or len(g.edges) != len(h.edges):
        return False
    target = Counter(h.edges)
    for perm in permutations(range(h.num_vertices)):
        if perm[g.source] != h.source or perm[g.sink] != h.sink:
            continue
        if Counter((perm[u], b, perm[v]) for u, b, v in g.edges) == target:
            return True
    return False


def perturb(t, rng):
    """Small random edit at one node; the result may or may not be
    equivalent to ``t``."""
    if isinstance(t, Action) or rng.random() < 0.25:
        return _edit(t, rng)
    kids = list(t.children)
    i = rng.randrange(len(kids))
    kids[i] = perturb(kids[i], rng)
    return type(t)(*kids)


def _edit(t, rng):
    if isinstance(t, Action):
        return Action(rng.choice(ACTIONS[:3]))
    kids = list(t.children)
    r = rng.random()
    if r < 0.3:
        rng.shuffle(kids)
        return type(t)(*kids)
    if r < 0.6:
        swap = {Or: And, And: Sand, Sand: And}
        if not t.commutative or rng.random() < 0.5:
            return swap[type(t)](*kids)
        return Sand(*kids) if isinstance(t, And) else And(*kids)
    if len(kids) > 1:
        kids.pop(rng.randrange(len(kids)))
        return type(t)(*kids)
    return type(t)(*kids, Action(rng.choice(ACTIONS[:3])))


def random_pair(rng, sand=True):
    """A pair of trees; roughly a third each are scrambled copies
    (equivalent), perturbed copies, and independent small trees."""
    t = random_term(rng, max_depth=5, n_actions=3, sand=sand)
    r = rng.random()
    if r < 1 / 3:
        return t, _strip_sand(scramble(t, rng), sand)
    if r < 2 / 3:
        return t, _strip_sand(perturb(t, rng), sand)
    return (random_term(rng, max_depth=3, n_actions=2, sand=sand),
            random_term(rng, max_depth=3, n_actions=2, sand=sand))


def _strip_sand(t, sand):
    if sand or isinstance(t, Action):
        return t
    op = And if isinstance(t, Sand) else type(t)
    return op(*(_strip_sand(c, sand) for c in t.children))
