import json
import subprocess
import sys

import pytest

from conftest import ROOT_TIMES, ROOT_TREE, ROOT_TREE_NF
from sandtree.cli import main
from sandtree.syntax import parse, to_json
from sandtree.terms import sort_commutative


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize_root(capsys, write):
    code, out, _ = run(capsys, "normalize", write("root.sat", ROOT_TREE))
    assert code == 0
    assert parse(out) == sort_commutative(parse(ROOT_TREE_NF))
    assert out == "OR(AND(rsaref_bof,ssh_bof),SAND(ftp_rhosts,rsh,local_bof))\n"


@pytest.mark.parametrize("text,expected", [("a", "a"), ("OR(a,OR(a,a))", "a")])
def test_normalize_small(capsys, write, text, expected):
    assert run(capsys, "normalize", write("t.sat", text)) == (0, expected + "\n", "")


def test_normalize_json_input_and_output(capsys, write):
    code, out, _ = run(capsys, "normalize", "--output", "json",
                       write("t.json", to_json(parse("AND(b,AND(a))"))))
    assert code == 0
    assert json.loads(out)["normal_form"] == "AND(a,b)"


def test_normalize_format_override(capsys, write):
    code, out, _ = run(capsys, "normalize", "--format", "sat", write("t.txt", "SAND(a)"))
    assert (code, out) == (0, "a\n")


def test_normalize_trace(capsys, write):
    code, out, err = run(capsys, "normalize", "--trace", write("root.sat", ROOT_TREE))
    assert code == 0
    assert json.loads(err.splitlines()[0])["rule"] == "E4'"


def test_parse_error_exit_2(capsys, write):
    code, _, err = run(capsys, "normalize", write("bad.sat", "AND(a,)"))
    assert code == 2 and "expected" in err


def test_missing_file_exit_2(capsys, tmp_path):
    assert run(capsys, "normalize", str(tmp_path / "nope.sat"))[0] == 2


def test_cap_exit_3(capsys, write):
    text = "AND(" + ",".join(f"OR(x{i},y{i})" for i in range(12)) + ")"
    assert run(capsys, "normalize", "--cap-nodes", "1000", write("big.sat", text))[0] == 3
    assert run(capsys, "semantics", "--cap-graphs", "100", write("big.sat", text))[0] == 3


@pytest.mark.parametrize("left,right,code", [
    (ROOT_TREE, ROOT_TREE_NF, 0),
    ("AND(a,b)", "SAND(a,b)", 1),
    ("AND(a,OR(b,c))", "OR(AND(a,b),AND(a,c))", 0),
])
def test_equiv(capsys, write, left, right, code):
    got, out, _ = run(capsys, "equiv", write("l.sat", left), write("r.sat", right))
    assert got == code
    assert out.startswith("equivalent" if code == 0 else "not equivalent")


def test_equiv_reports_normal_forms(capsys, write):
    _, out, _ = run(capsys, "equiv", write("l.sat", "AND(a,b)"), write("r.sat", "SAND(b,a)"))
    assert "AND(a,b)" in out and "SAND(b,a)" in out


@pytest.mark.parametrize("text,count", [(ROOT_TREE, 2), ("a", 1), ("AND(OR(a,b),OR(c,d))", 4)])
def test_semantics_count(capsys, write, text, count):
    code, out, _ = run(capsys, "semantics", write("t.sat", text))
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == f"{count} graphs"
    assert len(lines) == count + 1


def test_semantics_formats(capsys, write):
    path = write("root.sat", ROOT_TREE)
    _, out, _ = run(capsys, "semantics", "--output", "json", path)
    obj = json.loads(out)
    assert obj["count"] == 2 and len(obj["graphs"]) == 2
    _, out, _ = run(capsys, "semantics", "--output", "dot", path)
    assert out.splitlines()[0] == "// 2 graphs"
    assert out.count("digraph") == 2


def test_eval(capsys, write):
    beta = write("beta.json", json.dumps(ROOT_TIMES))
    assert run(capsys, "eval", write("f1.sat", ROOT_TREE), "--domain", "min-time", "--assign", beta)[:2] == (0, "9\n")
    assert run(capsys, "eval", write("f3.sat", ROOT_TREE_NF), "--domain", "min-time", "--assign", beta)[:2] == (0, "9\n")
    assert run(capsys, "eval", write("a.sat", "a"), "--domain", "min-time",
               "--assign", write("a.json", '{"a": 7}'))[:2] == (0, "7\n")


def test_eval_missing_assignment(capsys, write):
    code, _, err = run(capsys, "eval", write("t.sat", "AND(a,b)"), "--domain", "min-time",
                       "--assign", write("a.json", '{"a": 7}'))
    assert code == 4 and "'b'" in err


def test_eval_unknown_domain(capsys, write):
    code, _, _ = run(capsys, "eval", write("t.sat", "a"), "--domain", "nope",
                     "--assign", write("a.json", '{"a": 7}'))
    assert code == 2


def test_check_domain(capsys, write):
    assert run(capsys, "check-domain", "--domain", "min-time")[0] == 0
    assert run(capsys, "check-domain", "--domain", "satisfiable")[0] == 0
    spec = write("sum.json", json.dumps({"name": "all-sum", "or": "sum", "and": "sum", "sand": "sum"}))
    code, out, _ = run(capsys, "check-domain", "--domain-spec", spec, "--output", "json")
    assert code == 1
    report = json.loads(out)
    e11 = [r for r in report["axioms"] if r["axiom"] == "E11"][0]
    assert not e11["passed"] and e11["counterexample"]
    assert run(capsys, "check-domain", "--domain", "bogus")[0] == 2


def test_check_domain_reproducible(capsys, write):
    spec = write("sum.json", json.dumps({"or": "sum", "and": "sum", "sand": "sum"}))
    first = run(capsys, "check-domain", "--domain-spec", spec, "--seed", "5", "--trials", "7")
    second = run(capsys, "check-domain", "--domain-spec", spec, "--seed", "5", "--trials", "7")
    assert first == second


def test_dot(capsys, write):
    code, out, _ = run(capsys, "dot", write("root.sat", ROOT_TREE))
    assert code == 0 and out.count("->") == 8
    code, out, _ = run(capsys, "dot", "--normalized", write("root.sat", ROOT_TREE))
    assert out.count("->") == 7


def test_bad_cap_flag(capsys, write):
    with pytest.raises(SystemExit) as info:
        main(["normalize", "--cap-nodes", "0", write("t.sat", "a")])
    assert info.value.code == 2


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "sandtree", "normalize", write("t.sat", "OR(b,b)")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "b\n"
