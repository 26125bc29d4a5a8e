import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from sandtree.syntax import parse  # noqa: E402
from sandtree.terms import Action, And, Or, Sand  # noqa: E402

ROOT_TREE = "OR(SAND(SAND(ftp_rhosts,rsh),local_bof), AND(ssh_bof,rsaref_bof))"
ROOT_TREE_NF = "OR(SAND(ftp_rhosts,rsh,local_bof),AND(ssh_bof,rsaref_bof))"
ROOT_TIMES = {"ftp_rhosts": 3, "rsh": 5, "local_bof": 7, "ssh_bof": 8, "rsaref_bof": 9}


@pytest.fixture
def t_root():
    return parse(ROOT_TREE)


@pytest.fixture
def t_root_nf():
    return parse(ROOT_TREE_NF)


@pytest.fixture
def root_times():
    return dict(ROOT_TIMES)


def term_strategy(labels=("a", "b", "c"), max_leaves=12, sand=True):
    ops = [Or, And, Sand] if sand else [Or, And]
    leaves = st.sampled_from(labels).map(Action)

    def extend(children):
        return st.tuples(st.sampled_from(ops), st.lists(children, min_size=1, max_size=4)).map(
            lambda p: p[0](*p[1]))

    return st.recursive(leaves, extend, max_leaves=max_leaves)


terms = term_strategy()
standard_terms = term_strategy(sand=False)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
