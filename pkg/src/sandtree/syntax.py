"""Concrete syntax: the text DSL, the JSON object form and DOT export.

The DSL grammar::

    term  ::= IDENT | ("OR" | "AND" | "SAND") "(" term ("," term)* ")"
    IDENT ::= [A-Za-z_][A-Za-z0-9_-]*

Whitespace between tokens is ignored and keywords are case-sensitive.
"""

from __future__ import annotations

import json
import re
from typing import NamedTuple

from sandtree.errors import ParseError, SchemaError
from sandtree.terms import (
    IDENT_RE,
    OPERATORS,
    RESERVED,
    Action,
    Sand,
    Term,
)


class SourceSpan(NamedTuple):
    start: int
    end: int


_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_-]*)|(\S))")


class _Token(NamedTuple):
    kind: str  # "ident", "(", ")", ",", "eof", or "bad"
    text: str
    start: int
    end: int


def _tokenize(text):
    pos = 0
    n = len(text)
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            # only trailing whitespace left
            yield _Token("eof", "", n, n)
            return
        if m.group(1) is not None:
            yield _Token("ident", m.group(1), m.start(1), m.end(1))
        else:
            ch = m.group(2)
            kind = ch if ch in "()," else "bad"
            yield _Token(kind, ch, m.start(2), m.end(2))
        pos = m.end()


def _describe(tok):
    if tok.kind == "eof":
        return "end of input"
    return repr(tok.text)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok):
        span = SourceSpan(self._byte(tok.start), self._byte(tok.end))
        return ParseError(message, span, self.text)

    def _byte(self, index):
        return len(self.text[:index].encode("utf-8"))

    def expect(self, kind, what):
        tok = self.advance()
        if tok.kind != kind:
            raise self.error(f"expected {what}, found {_describe(tok)}", tok)
        return tok

    def parse_term(self):
        tok = self.advance()
        if tok.kind != "ident":
            raise self.error(
                f"expected action or operator, found {_describe(tok)}", tok
            )
        if tok.text not in RESERVED:
            return Action(tok.text)
        if self.peek().kind != "(":
            raise self.error(
                f"reserved word {tok.text!r} cannot be an action label; "
                f"expected '(' after it", tok
            )
        self.advance()
        if self.peek().kind == ")":
            raise self.error(
                f"empty argument list for {tok.text}; expected action or operator",
                self.peek(),
            )
        children = [self.parse_term()]
        while True:
            nxt = self.advance()
            if nxt.kind == ")":
                break
            if nxt.kind != ",":
                raise self.error(f"expected ',' or ')', found {_describe(nxt)}", nxt)
            children.append(self.parse_term())
        return OPERATORS[tok.text](*children)


def parse(text: str) -> Term:
    """Parse DSL text into a term; raises ParseError with a byte span."""
    p = _Parser(text)
    t = p.parse_term()
    p.expect("eof", "end of input")
    return t


def serialize(t: Term) -> str:
    """Canonical DSL rendering with no whitespace."""
    if isinstance(t, Action):
        return t.label
    parts = []
    _serialize_into(t, parts)
    return "".join(parts)


def _serialize_into(t, out):
    if isinstance(t, Action):
        out.append(t.label)
        return
    out.append(t.name)
    out.append("(")
    for i, c in enumerate(t.children):
        if i:
            out.append(",")
        _serialize_into(c, out)
    out.append(")")


# JSON ------------------------------------------------------------------

def term_to_obj(t: Term) -> dict:
    if isinstance(t, Action):
        return {"type": "ACTION", "label": t.label}
    return {"type": t.name, "children": [term_to_obj(c) for c in t.children]}


def term_from_obj(obj, path="$") -> Term:
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path)
    kind = obj.get("type")
    if kind == "ACTION":
        if set(obj) != {"type", "label"}:
            raise SchemaError("ACTION nodes carry exactly 'type' and 'label'", path)
        label = obj["label"]
        if not isinstance(label, str) or not IDENT_RE.match(label) or label in RESERVED:
            raise SchemaError(f"invalid action label {label!r}", path + ".label")
        return Action(label)
    if kind in OPERATORS:
        if set(obj) != {"type", "children"}:
            raise SchemaError(
                f"{kind} nodes carry exactly 'type' and 'children'", path
            )
        kids = obj["children"]
        if not isinstance(kids, list) or not kids:
            raise SchemaError("'children' must be a non-empty list", path + ".children")
        return OPERATORS[kind](
            *(term_from_obj(c, f"{path}.children[{i}]") for i, c in enumerate(kids))
        )
    raise SchemaError(f"unknown node type {kind!r}", path + ".type")


def to_json(t: Term, indent: int | None = None) -> str:
    return json.dumps(term_to_obj(t), indent=indent)


def from_json(text: str) -> Term:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (char {exc.pos})") from exc
    return term_from_obj(obj)


# DOT -------------------------------------------------------------------

def term_to_dot(t: Term, name: str = "tree") -> str:
    """Render a tree as a DOT digraph.

    SAND edges carry ordinal labels ``1``, ``2``, ... so the sequence is
    visible in the drawing.
    """
    lines = [f"digraph {name} {{", "  node [fontname=Helvetica];"]
    counter = 0

    def visit(node):
        nonlocal counter
        ident = f"n{counter}"
        counter += 1
        if isinstance(node, Action):
            lines.append(f'  {ident} [label="{node.label}", shape=box];')
            return ident
        lines.append(f'  {ident} [label="{node.name}", shape=ellipse];')
        for pos, child in enumerate(node.children, 1):
            cid = visit(child)
            if isinstance(node, Sand):
                lines.append(f'  {ident} -> {cid} [label="{pos}"];')
            else:
                lines.append(f"  {ident} -> {cid};")
        return ident

    visit(t)
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_term(path, fmt: str | None = None) -> Term:
    """Read a ``.sat`` (DSL) or ``.json`` file; ``fmt`` overrides the suffix."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "sat"
    if fmt == "json":
        return from_json(text)
    if fmt == "sat":
        return parse(text)
    raise ValueError(f"unknown input format {fmt!r}")


__all__ = [
    "SourceSpan",
    "parse",
    "serialize",
    "to_json",
    "from_json",
    "term_to_obj",
    "term_from_obj",
    "term_to_dot",
    "load_term",
]
