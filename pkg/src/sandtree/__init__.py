"""SAND attack trees: parsing, SP-graph semantics, normal forms and
attribute evaluation."""

from sandtree.attributes import (
    AttributeDomain,
    CompatibilityReport,
    builtin_domain,
    check_compatibility,
    domain_from_spec,
    eval_attribute,
)
from sandtree.errors import (
    CapExceeded,
    EmptyGraphSet,
    MalformedGraph,
    MissingAssignment,
    NotSeriesParallel,
    NotStandardTree,
    ParseError,
    SandTreeError,
    SchemaError,
    UnknownDomain,
)
from sandtree.rewrite import (
    RewriteTrace,
    canonical_normalize,
    is_normal_form,
    normalize,
    rewrite_step,
    trace_normalize,
)
from sandtree.semantics import (
    GraphSet,
    equivalent,
    multiset_semantics,
    sp_semantics,
    term_of_graphset,
)
from sandtree.spgraph import (
    SPGraph,
    decompose,
    edge_graph,
    graph_to_dot,
    graphs_equal,
    par_compose,
    seq_compose,
)
from sandtree.syntax import from_json, parse, serialize, term_to_dot, to_json
from sandtree.terms import (
    Action,
    And,
    Or,
    Sand,
    Term,
    is_standard,
    norm,
    sort_commutative,
)

__all__ = [
    "AttributeDomain",
    "CompatibilityReport",
    "builtin_domain",
    "check_compatibility",
    "domain_from_spec",
    "eval_attribute",
    "CapExceeded",
    "EmptyGraphSet",
    "MalformedGraph",
    "MissingAssignment",
    "NotSeriesParallel",
    "NotStandardTree",
    "ParseError",
    "SandTreeError",
    "SchemaError",
    "UnknownDomain",
    "RewriteTrace",
    "canonical_normalize",
    "is_normal_form",
    "normalize",
    "rewrite_step",
    "trace_normalize",
    "GraphSet",
    "equivalent",
    "multiset_semantics",
    "sp_semantics",
    "term_of_graphset",
    "SPGraph",
    "decompose",
    "edge_graph",
    "graph_to_dot",
    "graphs_equal",
    "par_compose",
    "seq_compose",
    "Action",
    "And",
    "Or",
    "Sand",
    "Term",
    "is_standard",
    "norm",
    "sort_commutative",
    "from_json",
    "parse",
    "serialize",
    "term_to_dot",
    "to_json",
]

__version__ = "0.1.0"
