"""Exception hierarchy shared across the package."""


class SandTreeError(Exception):
    """Base class for every error raised by sandtree."""


class ParseError(SandTreeError, ValueError):
    """Malformed tree text.  ``span`` is a ``(start, end)`` byte range."""

    def __init__(self, message, span, text=None):
        self.span = span
        self.text = text
        super().__init__(f"{message} at byte {span.start}")


class SchemaError(SandTreeError, ValueError):
    """JSON input that does not match the expected object shape."""

    def __init__(self, message, path="$"):
        self.path = path
        super().__init__(f"{path}: {message}")


class CapExceeded(SandTreeError):
    """A configured size cap (graph-set size or term node count) was hit."""

    def __init__(self, what, cap, attempted=None):
        self.what = what
        self.cap = cap
        self.attempted = attempted
        msg = f"{what} cap of {cap} exceeded"
        if attempted is not None:
            msg += f" (needed {attempted})"
        super().__init__(msg)


class NotSeriesParallel(SandTreeError):
    """Series/parallel reduction stalled before reaching a single edge."""


class MalformedGraph(SandTreeError, ValueError):
    """A raw graph violates the source-sink graph conditions."""


class NotStandardTree(SandTreeError, ValueError):
    """Multiset semantics requested for a tree that contains SAND."""


class EmptyGraphSet(SandTreeError, ValueError):
    """No term denotes the empty set of graphs."""


class MissingAssignment(SandTreeError, LookupError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"no basic assignment for action {label!r}")


class UnknownDomain(SandTreeError, LookupError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown attribute domain {name!r}")
