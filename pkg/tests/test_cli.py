import json
import subprocess
import sys

import pytest

from gradedpi import io as gio
from gradedpi.algebra import Z2, grassmann, matrix_algebra, upper_triangular
from gradedpi.cli import exit_status, run
from gradedpi.errors import InputError
from gradedpi.sheaves import check_sheaf, pseudocircle, sierpinski


@pytest.fixture
def files(tmp_path):
    (tmp_path / "m2.json").write_text(json.dumps(matrix_algebra(2).to_dict()))
    (tmp_path / "sierpinski.json").write_text(json.dumps(sierpinski().to_dict()))
    (tmp_path / "ps.json").write_text(json.dumps({"topology": "sierpinski.json", "constant_sheaf": "E:4"}))
    (tmp_path / "m2sheaf.json").write_text(json.dumps({"topology": "sierpinski", "constant_sheaf": "M:2"}))
    (tmp_path / "circle.json").write_text(json.dumps({"topology": "pseudocircle", "constant_sheaf": "F"}))
    (tmp_path / "ctx.json").write_text(json.dumps(
        {"A": "F", "B": "F", "n": 2, "e": {"diagonal": [1, 0]}, "iso": [[1]]}))
    return tmp_path


def call(argv, capsys):
    code = run([str(a) for a in argv])
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


# -- io ----------------------------------------------------------------------------

@pytest.mark.parametrize("A", [matrix_algebra(2), grassmann(3), upper_triangular(2)], ids=lambda a: a.name)
def test_algebra_round_trip(A):
    B = gio.algebra_from_dict(json.loads(json.dumps(A.to_dict())))
    assert B.same_structure(A) and B.group == A.group and B.labels == A.labels


def test_group_parsing():
    assert gio.parse_group("Z2") == Z2
    assert gio.parse_group("Z^2 x Z3").free_rank == 2
    for bad in ("S3", {"nonabelian": True}, {"abelian": False}):
        with pytest.raises(InputError):
            gio.parse_group(bad)


def test_malformed_algebra():
    with pytest.raises(InputError):
        gio.algebra_from_dict({"degrees": [[0]]})
    with pytest.raises(InputError):
        gio.algebra_ref("Q:7")


def test_explicit_presheaf_file():
    data = {
        "topology": {"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]},
        "sections": [{"open": [], "algebra": {"dim": 0, "degrees": [], "unit": [], "mul": []}},
                     {"open": ["a"], "algebra": "F"}, {"open": ["a", "b"], "algebra": "F"}],
        "restrictions": [{"from": ["a", "b"], "to": ["a"], "matrix": [["1"]]}],
    }
    F = gio.presheaf_from_dict(data)
    assert F.dims() == {0: 0, 1: 1, 3: 1}
    assert check_sheaf(F).verdict is True


def test_named_topologies():
    assert gio.topology_ref("pseudocircle").n == pseudocircle().n
    assert len(gio.topology_ref("discrete:3").opens) == 8


# -- cli ---------------------------------------------------------------------------

def test_validate_file(files, capsys):
    code, doc, _ = call(["algebra", "validate", "--in", files / "m2.json"], capsys)
    assert code == 0 and doc["verdict"] is True
    assert doc["reports"][0]["check"] == "validate_algebra"
    assert doc["tool"] == "gradedpi" and doc["config"]["command"] == "validate"


def test_kernel_codimension(capsys):
    code, doc, _ = call(["identities", "kernel", "--algebra", "E:6", "--degree", 3], capsys)
    assert code == 0
    assert doc["reports"][0]["invariants"]["codimension"] == 4
    assert doc["reports"][0]["truncation_degree"] == 3


def test_graded_kernel_pattern(capsys):
    code, doc, _ = call(["identities", "kernel", "--algebra", "E:4", "--degree", 2, "--degrees", "1,1"], capsys)
    assert code == 0 and doc["reports"][0]["invariants"]["codimension"] == 1


def test_identity_check_fail_exit_1(capsys):
    code, doc, _ = call(["identities", "check", "--algebra", "M:2", "--poly", "[x1,x2]"], capsys)
    assert code == 1 and doc["verdict"] is False and doc["reports"][0]["witness"]


def test_variety_and_codim(capsys):
    code, doc, _ = call(["identities", "variety", "--algebra", "M:2", "--other", "F", "--degree", 3], capsys)
    assert code == 0
    code, doc, _ = call(["identities", "codim", "--algebra", "E:8", "--degree", 4], capsys)
    assert doc["reports"][0]["invariants"]["codimensions"] == [1, 2, 4, 8]


def test_relfree(capsys):
    code, doc, _ = call(["identities", "relfree", "--algebra", "F", "--vars", "x1,x2", "--degree", 2], capsys)
    assert code == 0 and doc["reports"][0]["invariants"]["dim"] == 6


def test_sheaf_commands(files, capsys):
    code, doc, _ = call(["sheaf", "check", "--topology", files / "sierpinski.json",
                         "--presheaf", files / "ps.json"], capsys)
    assert code == 0 and [r["check"] for r in doc["reports"]] == ["check_presheaf", "check_sheaf"]
    code, doc, _ = call(["sheaf", "locally-ringed", "--presheaf", files / "m2sheaf.json"], capsys)
    assert code == 1
    code, doc, _ = call(["sheaf", "cech", "--presheaf", files / "circle.json"], capsys)
    assert doc["reports"][0]["invariants"]["h1"] == 1
    code, doc, _ = call(["sheaf", "stalk", "--presheaf", files / "ps.json", "--point", "b"], capsys)
    assert doc["reports"][0]["invariants"]["dim"] == 16
    code, doc, _ = call(["sheaf", "sheafify", "--presheaf", files / "circle.json"], capsys)
    assert code == 0 and doc["reports"][0]["invariants"]["eta_is_isomorphism"] is True
    code, doc, _ = call(["sheaf", "pushforward", "--presheaf", files / "circle.json",
                         "--map", "a=p,b=p,x=p,y=p", "--target-space", "point"], capsys)
    assert code == 0
    code, doc, _ = call(["sheaf", "recover", "--presheaf", files / "ps.json",
                         "--target", files / "ps.json", "--degree", 2], capsys)
    assert code == 0


def test_calculus_commands(capsys):
    code, doc, _ = call(["calculus", "omega1", "--algebra", "M:2"], capsys)
    assert doc["reports"][0]["invariants"]["omega1_dim"] == 12
    code, doc, _ = call(["calculus", "hochschild", "--algebra", "Tp:2"], capsys)
    assert doc["reports"][0]["invariants"]["HH1"] == 1
    code, doc, _ = call(["calculus", "tangent", "--algebra", "UT:2"], capsys)
    assert code == 0
    code, doc, _ = call(["calculus", "fedosov", "--seed", 3, "--samples", 20], capsys)
    assert code == 0 and doc["reports"][0]["invariants"]["seed"] == 3
    code, doc, _ = call(["calculus", "filtration", "--algebra", "UT:2"], capsys)
    assert doc["reports"][0]["invariants"]["order"] == 1
    code, doc, _ = call(["calculus", "filtration", "--algebra", "E:3", "--kind", "odd"], capsys)
    assert doc["reports"][0]["invariants"]["ideal_dims"] == [7, 4, 1, 0]


def test_morita_commands(files, capsys):
    code, doc, _ = call(["morita", "matrix", "--algebra", "UT:2", "--n", 2], capsys)
    assert doc["reports"][0]["invariants"]["dim"] == 12
    code, doc, _ = call(["morita", "corner", "--algebra", "F", "--n", 2, "--e", "1,0"], capsys)
    assert doc["reports"][0]["invariants"]["dim"] == 1
    code, doc, _ = call(["morita", "certify", "--in", files / "ctx.json", "--degree", 4], capsys)
    assert code == 0 and doc["reports"][0]["truncation_degree"] == 4
    code, doc, _ = call(["morita", "morphism", "--in", files / "ctx.json", "--topology", "sierpinski",
                         "--degree", 4], capsys)
    assert code == 0


def test_errors_exit_2(files, capsys):
    code, doc, err = call(["suite", "nope"], capsys)
    assert code == 2 and doc["error"]["code"] == "E_INPUT" and "E_INPUT" in err
    code, doc, err = call(["bogus"], capsys)
    assert code == 2 and doc["error"]["code"] == "E_USAGE"
    bad = files / "bad.json"
    bad.write_text("{not json")
    code, doc, err = call(["algebra", "validate", "--in", bad], capsys)
    assert code == 2 and doc["error"]["code"] == "E_INPUT"
    code, doc, err = call(["identities", "kernel", "--algebra", "M:3", "--degree", 6, "--budget", 10], capsys)
    assert code == 2 and doc["error"]["code"] == "E_BUDGET"


def test_out_file_and_determinism(tmp_path, capsys):
    a = tmp_path / "a.json"
    runs = []
    for _ in range(2):
        assert run(["suite", "morita_varieties", "--out", str(a)]) == 0
        runs.append(a.read_bytes())
    assert runs[0] == runs[1]
    assert capsys.readouterr().out == ""
    doc = json.loads(a.read_text())
    assert exit_status(doc) == 0
    assert list(doc) == sorted(doc)


def test_suite_scopes(capsys):
    code, doc, _ = call(["suite", "grading_core"], capsys)
    assert code == 0 and doc["reports"][0]["check"] == "corpus_validates"


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "gradedpi", "algebra", "validate", "--algebra", "UT:3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] is True
