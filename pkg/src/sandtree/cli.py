"""Command-line front end.

Exit codes:
    0  success (or "equivalent", or domain compatible)
    1  "not equivalent", or domain not compatible
    2  unreadable input, parse/schema error, unknown domain, bad usage
    3  graph-set or term-size cap exceeded
    4  basic assignment missing an action
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from sandtree.attributes import (
    BUILTIN_DOMAINS,
    builtin_domain,
    check_compatibility,
    domain_from_spec,
    eval_attribute,
)
from sandtree.errors import (
    CapExceeded,
    MissingAssignment,
    ParseError,
    SchemaError,
    UnknownDomain,
)
from sandtree.rewrite import DEFAULT_NODE_CAP, INNERMOST, STRATEGIES, normalize, trace_normalize
from sandtree.semantics import (
    DEFAULT_GRAPH_CAP,
    graphset_to_obj,
    sp_semantics,
)
from sandtree.spgraph import graph_to_dot
from sandtree.syntax import load_term, serialize, term_to_dot, term_to_obj

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_ASSIGN = 4

OUTPUT_FORMATS = ("text", "json", "dot")


@dataclass
class CliConfig:
    inputs: list
    output: str = "text"
    input_format: str | None = None
    cap_graphs: int = DEFAULT_GRAPH_CAP
    cap_nodes: int = DEFAULT_NODE_CAP
    strategy: str = INNERMOST
    seed: int = 0
    trials: int = 100
    tolerance: float = 1e-9

    @classmethod
    def from_args(cls, args):
        return cls(
            inputs=[p for p in (getattr(args, "input", None),
                                getattr(args, "other", None)) if p],
            output=args.output,
            input_format=args.format,
            cap_graphs=args.cap_graphs,
            cap_nodes=args.cap_nodes,
            strategy=args.strategy,
            seed=args.seed,
            trials=getattr(args, "trials", 100),
            tolerance=args.tolerance,
        )


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _common_flags():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--cap-graphs", type=_positive_int, default=DEFAULT_GRAPH_CAP,
                   help="maximum size of a graph set (default %(default)s)")
    g.add_argument("--cap-nodes", type=_positive_int, default=DEFAULT_NODE_CAP,
                   help="maximum term size during rewriting (default %(default)s)")
    g.add_argument("--strategy", choices=STRATEGIES, default=INNERMOST)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--tolerance", type=float, default=1e-9)
    g.add_argument("--output", choices=OUTPUT_FORMATS, default="text",
                   help="output format")
    g.add_argument("--format", choices=("sat", "json"), default=None,
                   help="input format (default: from file extension)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="sandtree", description="Analyse SAND attack trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="print the normal form")
    p.add_argument("input")
    p.add_argument("--trace", action="store_true",
                   help="write the rewrite trace as JSON lines to stderr")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of two trees")
    p.add_argument("input")
    p.add_argument("other")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("semantics", parents=[common], help="list the SP graphs of a tree")
    p.add_argument("input")
    p.set_defaults(func=cmd_semantics)

    p = sub.add_parser("eval", parents=[common], help="evaluate an attribute")
    p.add_argument("input")
    p.add_argument("--domain", required=True,
                   help=f"one of: {', '.join(BUILTIN_DOMAINS)}")
    p.add_argument("--assign", required=True, help="JSON file mapping action to value")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check-domain", parents=[common],
                       help="test an attribute domain against the axioms")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--domain", help=f"one of: {', '.join(BUILTIN_DOMAINS)}")
    src.add_argument("--domain-spec", help="JSON file naming the three combinators")
    p.add_argument("--trials", type=_positive_int, default=100)
    p.set_defaults(func=cmd_check_domain)

    p = sub.add_parser("dot", parents=[common], help="render a tree as DOT")
    p.add_argument("input")
    p.add_argument("--normalized", action="store_true",
                   help="render the normal form instead of the input tree")
    p.set_defaults(func=cmd_dot)
    return parser


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_normalize(args, cfg: CliConfig):
    t = load_term(args.input, cfg.input_format)
    if args.trace:
        trace = trace_normalize(t, cfg.strategy, cfg.seed, cfg.cap_nodes)
        sys.stderr.write(trace.to_jsonl())
        nf = normalize(trace.result)
    else:
        nf = normalize(t, cfg.strategy, cfg.seed, cfg.cap_nodes)
    if cfg.output == "json":
        _emit(json.dumps({"normal_form": serialize(nf), "tree": term_to_obj(nf)}))
    elif cfg.output == "dot":
        _emit(term_to_dot(nf))
    else:
        _emit(serialize(nf))
    return EXIT_OK


def cmd_equiv(args, cfg: CliConfig):
    a = normalize(load_term(args.input, cfg.input_format), cfg.strategy, cfg.seed, cfg.cap_nodes)
    b = normalize(load_term(args.other, cfg.input_format), cfg.strategy, cfg.seed, cfg.cap_nodes)
    same = a == b
    if cfg.output == "json":
        _emit(json.dumps({"equivalent": same, "normal_forms": [serialize(a), serialize(b)]}))
    elif same:
        _emit("equivalent")
    else:
        _emit(f"not equivalent\n  {serialize(a)}\n  {serialize(b)}")
    return EXIT_OK if same else EXIT_FALSE


def cmd_semantics(args, cfg: CliConfig):
    gs = sp_semantics(load_term(args.input, cfg.input_format), cfg.cap_graphs)
    if cfg.output == "json":
        _emit(json.dumps({"count": len(gs), "graphs": graphset_to_obj(gs)}))
    elif cfg.output == "dot":
        _emit(f"// {len(gs)} graphs")
        for i, g in enumerate(gs):
            sys.stdout.write(graph_to_dot(g, name=f"G{i}"))
    else:
        _emit(f"{len(gs)} graphs")
        for g in gs:
            _emit(str(g))
    return EXIT_OK


def cmd_eval(args, cfg: CliConfig):
    t = load_term(args.input, cfg.input_format)
    domain = builtin_domain(args.domain)
    with open(args.assign, encoding="utf-8") as fh:
        beta = json.load(fh)
    if not isinstance(beta, dict):
        raise SchemaError("assignment must be a JSON object")
    value = eval_attribute(t, domain, beta)
    if cfg.output == "json":
        _emit(json.dumps({"domain": domain.name, "value": value}))
    else:
        _emit(json.dumps(value))
    return EXIT_OK


def cmd_check_domain(args, cfg: CliConfig):
    if args.domain_spec:
        with open(args.domain_spec, encoding="utf-8") as fh:
            domain = domain_from_spec(json.load(fh))
    else:
        domain = builtin_domain(args.domain)
    report = check_compatibility(domain, trials=cfg.trials, seed=cfg.seed,
                                 tolerance=cfg.tolerance)
    _emit(report.to_json() if cfg.output == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FALSE


def cmd_dot(args, cfg: CliConfig):
    t = load_term(args.input, cfg.input_format)
    if args.normalized:
        t = normalize(t, cfg.strategy, cfg.seed, cfg.cap_nodes)
    _emit(term_to_dot(t))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = CliConfig.from_args(args)
    try:
        return args.func(args, cfg)
    except (ParseError, SchemaError, UnknownDomain, OSError, ValueError) as exc:
        print(f"sandtree: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"sandtree: error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except MissingAssignment as exc:
        print(f"sandtree: error: {exc}", file=sys.stderr)
        return EXIT_ASSIGN


if __name__ == "__main__":
    sys.exit(main())
