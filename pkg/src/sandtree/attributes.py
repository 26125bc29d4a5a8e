"""Attribute domains and bottom-up evaluation on SAND attack trees.

An attribute domain supplies one variadic combinator per refinement.  The
value of a tree is computed from the basic assignment at the leaves up to
the root.  Evaluation gives the same value on every equivalent tree only if
the domain is *compatible*, that is, both sides of each axiom evaluate to
the same value for all inputs.  :func:`check_compatibility` tests that by
bounded sampling (or exhaustive enumeration for booleans).
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Mapping, Sequence

from sandtree.errors import MissingAssignment, UnknownDomain
from sandtree.terms import Action, And, Or, Sand, Term

Combinator = Callable[[Sequence[Any]], Any]

NUMBER = "number"    # integers, compared exactly
REAL = "real"        # floats, compared with a relative tolerance
BOOLEAN = "boolean"  # enumerated exhaustively
VALUE_KINDS = (NUMBER, REAL, BOOLEAN)

COMBINATORS: dict[str, Combinator] = {
    "min": min,
    "max": max,
    "sum": sum,
    "prod": math.prod,
    "any": any,
    "all": all,
}


@dataclass(frozen=True)
class AttributeDomain:
    """Value kind plus the OR, AND and SAND combinators.

    Each combinator receives the list of child values (length >= 1).
    ``extension`` marks domains defined by this library rather than taken
    from the attack-tree literature.
    """

    name: str
    kind: str
    or_combine: Combinator
    and_combine: Combinator
    sand_combine: Combinator
    extension: bool = False
    description: str = ""

    def __post_init__(self):
        if self.kind not in VALUE_KINDS:
            raise ValueError(f"unknown value kind {self.kind!r}")

    def combinator_for(self, t: Term) -> Combinator:
        if isinstance(t, Or):
            return self.or_combine
        if isinstance(t, And):
            return self.and_combine
        return self.sand_combine


_BUILTINS = {
    "min-time": AttributeDomain(
        "min-time", NUMBER, min, max, sum,
        description="minimal attack time: OR=min, AND=max, SAND=sum",
    ),
    "min-cost": AttributeDomain(
        "min-cost", NUMBER, min, sum, sum, extension=True,
        description="minimal attack cost: OR=min, AND=sum, SAND=sum",
    ),
    "satisfiable": AttributeDomain(
        "satisfiable", BOOLEAN, any, all, all,
        description="satisfiability: OR=any, AND=all, SAND=all",
    ),
}

BUILTIN_DOMAINS = tuple(_BUILTINS)


def builtin_domain(name: str) -> AttributeDomain:
    try:
        return _BUILTINS[name]
    except KeyError:
        raise UnknownDomain(name) from None


def domain_from_spec(obj: Mapping[str, Any]) -> AttributeDomain:
    """Build a domain from ``{"name", "kind", "or", "and", "sand"}`` where the
    combinators are names from :data:`COMBINATORS`."""
    try:
        fns = [COMBINATORS[obj[k]] for k in ("or", "and", "sand")]
    except KeyError as exc:
        raise ValueError(f"bad domain spec, missing or unknown {exc}") from None
    return AttributeDomain(
        obj.get("name", "custom"), obj.get("kind", NUMBER), *fns,
        extension=True, description=obj.get("description", ""),
    )


def eval_attribute(t: Term, domain: AttributeDomain, beta: Mapping[str, Any]):
    """Evaluate ``t`` bottom-up: ``beta`` on leaves, combinators above."""
    if isinstance(t, Action):
        try:
            return beta[t.label]
        except KeyError:
            raise MissingAssignment(t.label) from None
    values = [eval_attribute(c, domain, beta) for c in t.children]
    return domain.combinator_for(t)(values)


# Compatibility ---------------------------------------------------------

def _vars(prefix, n):
    return [Action(f"{prefix}{i}") for i in range(1, n + 1)]


def axiom_instances(outer=(0, 1, 2), inner=(1, 2, 3)) -> Iterator[tuple[str, dict, Term, Term]]:
    """Concrete instances ``(axiom, arities, lhs, rhs)`` of every axiom
    scheme, with distinct variables rendered as actions ``X1``, ``Y2``, ...

    ``outer`` bounds the prefix/suffix lengths k and m, ``inner`` the length
    l of the inner sequence.
    """
    a = Action("A")
    for op, ax in ((Or, "E1"), (And, "E2")):
        for l in inner:
            ys = _vars("Y", l)
            for perm in itertools.permutations(range(l)):
                yield ax, {"l": l, "perm": list(perm)}, op(*ys), op(*(ys[p] for p in perm))
    for op, ax in ((Or, "E3"), (And, "E4")):
        for k in outer:
            for l in inner:
                xs, ys = _vars("X", k), _vars("Y", l)
                yield ax, {"k": k, "l": l}, op(*xs, op(*ys)), op(*xs, *ys)
    for k in outer:
        for m in outer:
            for l in inner:
                xs, ys, zs = _vars("X", k), _vars("Y", l), _vars("Z", m)
                yield "E4'", {"k": k, "l": l, "m": m}, Sand(*xs, Sand(*ys), *zs), Sand(*xs, *ys, *zs)
    for op, ax in ((Or, "E5"), (And, "E6"), (Sand, "E6'")):
        yield ax, {}, op(a), a
    for k in outer:
        for l in inner:
            xs, ys = _vars("X", k), _vars("Y", l)
            yield "E10", {"k": k, "l": l}, And(*xs, Or(*ys)), Or(*(And(*xs, y) for y in ys))
    for k in outer:
        for m in outer:
            for l in inner:
                xs, ys, zs = _vars("X", k), _vars("Y", l), _vars("Z", m)
                yield ("E10'", {"k": k, "l": l, "m": m}, Sand(*xs, Or(*ys), *zs),
                       Or(*(Sand(*xs, y, *zs) for y in ys)))
    for k in outer:
        xs = _vars("X", k)
        yield "E11", {"k": k}, Or(a, a, *xs), Or(a, *xs)


AXIOM_IDS = ("E1", "E2", "E3", "E4", "E4'", "E5", "E6", "E6'", "E10", "E10'", "E11")


@dataclass
class AxiomResult:
    axiom: str
    arities: list[dict] = field(default_factory=list)
    trials: int = 0
    passed: bool = True
    counterexample: dict | None = None

    def to_obj(self):
        return {
            "axiom": self.axiom,
            "arities": self.arities,
            "trials": self.trials,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass
class CompatibilityReport:
    domain: str
    seed: int
    exhaustive: bool
    results: list[AxiomResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def failing(self) -> list[str]:
        return [r.axiom for r in self.results if not r.passed]

    def to_obj(self):
        return {
            "domain": self.domain,
            "seed": self.seed,
            "exhaustive": self.exhaustive,
            "passed": self.passed,
            "axioms": [r.to_obj() for r in self.results],
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_obj(), indent=indent)

    def to_text(self) -> str:
        lines = [f"domain {self.domain} (seed {self.seed}"
                 f"{', exhaustive' if self.exhaustive else ''})"]
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            lines.append(f"  {r.axiom:<5} {status}  {len(r.arities)} instances, {r.trials} trials")
            if r.counterexample:
                ce = r.counterexample
                lines.append(f"        counterexample {ce['arities']}: {ce['values']}"
                             f" gives {ce['lhs']!r} vs {ce['rhs']!r}")
        lines.append("compatible" if self.passed else "not compatible")
        return "\n".join(lines) + "\n"


def _draw(kind, rng):
    if kind == REAL:
        return rng.uniform(-100.0, 100.0)
    return rng.randint(0, 100)


def _same(kind, x, y, tolerance):
    if kind == REAL:
        return math.isclose(x, y, rel_tol=tolerance, abs_tol=tolerance)
    return x == y


def check_compatibility(domain: AttributeDomain, trials: int = 100, seed: int = 0,
                        tolerance: float = 1e-9, outer=(0, 1, 2),
                        inner=(1, 2, 3)) -> CompatibilityReport:
    """Test every axiom instance on random (or, for booleans, all) inputs.

    Numeric domains get ``trials`` random assignments per instance.  The
    report records the first counterexample per axiom; rerunning with the
    same seed reproduces it.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    exhaustive = domain.kind == BOOLEAN
    results = {ax: AxiomResult(ax) for ax in AXIOM_IDS}
    for ax, arities, lhs, rhs in axiom_instances(outer, inner):
        res = results[ax]
        res.arities.append(arities)
        names = sorted(set(lhs.actions()) | set(rhs.actions()))
        if exhaustive:
            samples = (dict(zip(names, bits))
                       for bits in itertools.product((False, True), repeat=len(names)))
        else:
            samples = ({n: _draw(domain.kind, rng) for n in names} for _ in range(trials))
        for trial, beta in enumerate(samples):
            res.trials += 1
            try:
                left = eval_attribute(lhs, domain, beta)
                right = eval_attribute(rhs, domain, beta)
                ok = _same(domain.kind, left, right, tolerance)
            except Exception as exc:  # a combinator blew up: record, don't raise
                left = right = f"error: {exc}"
                ok = False
            if not ok:
                res.passed = False
                if res.counterexample is None:
                    res.counterexample = {
                        "arities": arities, "seed": seed, "trial": trial,
                        "values": beta, "lhs": left, "rhs": right,
                    }
    return CompatibilityReport(domain.name, seed, exhaustive,
                               [results[ax] for ax in AXIOM_IDS])
