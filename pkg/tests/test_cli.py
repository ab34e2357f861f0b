import io
import json
import os

import pytest

from egpkit import chain, from_relations, low_of, zfn_equal
from egpkit.cli import main
from egpkit.io import (
    dump_document,
    parse_document,
    preorder_to_doc,
    submodfn_to_doc,
)


@pytest.fixture(autouse=True)
def clean_cap_env(monkeypatch):
    monkeypatch.delenv("EGPKIT_MAX_N", raising=False)
    yield
    os.environ.pop("EGPKIT_MAX_N", None)


def run(capsys, argv, stdin_text=None, monkeypatch=None):
    if stdin_text is not None:
        assert monkeypatch is not None
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin_text))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def hexagon_doc(tmp_path):
    code_path = tmp_path / "hex.json"
    from egpkit import permutahedron

    code_path.write_text(dump_document(submodfn_to_doc(permutahedron([3, 2, 1]))))
    return str(code_path)


def test_gen_permutahedron_round_trip(capsys, hexagon):
    code, out, _ = run(capsys, ["gen", "permutahedron", "3,2,1"])
    assert code == 0
    z = parse_document(out)
    assert zfn_equal(z, hexagon)


def test_check_report(capsys, tmp_path):
    path = hexagon_doc(tmp_path)
    code, out, _ = run(capsys, ["check", path, "--format", "text"])
    assert code == 0
    assert "submodular: yes" in out
    assert "modular: no" in out
    code, out, _ = run(capsys, ["check", path])
    doc = json.loads(out)
    assert doc["submodular"] is True
    assert doc["blocks"] == [["a", "b", "c"]]


def test_faces_text(capsys, tmp_path):
    path = hexagon_doc(tmp_path)
    code, out, _ = run(capsys, ["faces", path, "--format", "text"])
    assert code == 0
    assert "faces: 13" in out
    assert "f-vector: 6,6,1" in out


def test_min_faces_json(capsys, tmp_path):
    path = hexagon_doc(tmp_path)
    code, out, _ = run(capsys, ["min-faces", path])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["faces"]) == 6
    assert all(f["dim"] == 0 for f in doc["faces"])


def test_chi_text_and_json(capsys, tmp_path):
    path = hexagon_doc(tmp_path)
    code, out, _ = run(capsys, ["chi", path, "--format", "text"])
    assert code == 0
    assert "chi = k^3 - 3*k^2 + 2*k" in out
    assert "binomial: 6*C(k,3)" in out
    code, out, _ = run(capsys, ["chi", path])
    assert json.loads(out)["coeffs"] == ["0", "2", "-3", "1"]


def test_stdin_pipe(capsys, monkeypatch, hexagon):
    text = dump_document(submodfn_to_doc(hexagon))
    code, out, _ = run(
        capsys, ["faces", "-", "--format", "text"], stdin_text=text, monkeypatch=monkeypatch
    )
    assert code == 0
    assert "f-vector: 6,6,1" in out


def test_pre_of_cone(capsys, tmp_path, abc):
    z = low_of(chain(abc))
    path = tmp_path / "cone.json"
    path.write_text(dump_document(submodfn_to_doc(z)))
    code, out, _ = run(capsys, ["pre", str(path), "--format", "text"])
    assert code == 0
    assert "a<=b" in out and "b<=c" in out and "a<=c" in out


def test_ehrhart(capsys, tmp_path, abc):
    path = tmp_path / "p.json"
    path.write_text(dump_document(preorder_to_doc(chain(abc))))
    code, out, _ = run(capsys, ["ehrhart", str(path)])
    assert code == 0
    # C(k,3) = k(k-1)(k-2)/6
    assert json.loads(out)["coeffs"] == ["0", "1/3", "-1/2", "1/6"]
    code, out, _ = run(capsys, ["ehrhart", "--weak", str(path)])
    assert json.loads(out)["coeffs"] == ["1", "11/6", "1", "1/6"]


def test_closure(capsys, tmp_path, abc, pentagon):
    zpath = tmp_path / "z.json"
    zpath.write_text(dump_document(submodfn_to_doc(pentagon)))
    ppath = tmp_path / "p.json"
    # the total order a < c < b closes to the vee over the blunt corner
    L = from_relations(abc, [("a", "c"), ("c", "b")])
    ppath.write_text(dump_document(preorder_to_doc(L)))
    code, out, _ = run(capsys, ["closure", str(zpath), str(ppath)])
    assert code == 0
    doc = json.loads(out)
    assert doc["relations"] == [["a", "b"], ["c", "b"]]


def test_glue(capsys, tmp_path, hexagon):
    zpath = tmp_path / "z.json"
    zpath.write_text(dump_document(submodfn_to_doc(hexagon)))
    p1 = tmp_path / "p1.json"
    p1.write_text(json.dumps({"kind": "preorder", "ground": ["a"], "relations": []}))
    p2 = tmp_path / "p2.json"
    p2.write_text(
        json.dumps({"kind": "preorder", "ground": ["b", "c"], "relations": [["b", "c"]]})
    )
    code, out, _ = run(
        capsys, ["glue", str(zpath), str(p1), str(p2), "--split", "a"]
    )
    assert code == 0
    assert json.loads(out)["relations"] == [["a", "b"], ["a", "c"], ["b", "c"]]


def test_coproduct(capsys, tmp_path):
    path = hexagon_doc(tmp_path)
    code, out, _ = run(capsys, ["coproduct", "--split", "a", path])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["terms"]) == 1
    assert len(doc["terms"][0]["factors"]) == 2


def test_delta_and_phi(capsys, tmp_path):
    path = hexagon_doc(tmp_path)
    code, out, _ = run(capsys, ["delta", path, "--format", "text"])
    assert code == 0
    assert "terms: 13" in out
    code, out, _ = run(capsys, ["phi", path, "--format", "text"])
    assert "terms: 6" in out


def test_bforests(capsys):
    code, out, _ = run(
        capsys,
        ["bforests", "a", "b", "c", "a,b", "b,c", "a,b,c", "--format", "text"],
    )
    assert code == 0
    assert "forests: 11" in out


def test_gen_families(capsys):
    code, out, _ = run(capsys, ["gen", "matroid-rank", "uniform:2,3"])
    assert code == 0
    z = parse_document(out)
    assert z.value_of(["a", "b"]).finite() == 2
    code, out, _ = run(capsys, ["gen", "preorder-cone", "chain:3"])
    assert code == 0
    z = parse_document(out)
    assert z.value_of(["a"]).finite() == 0
    code, out, _ = run(capsys, ["gen", "nestohedron", "a", "b", "a,b"])
    assert code == 0


def test_error_exit_codes(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, ["check", str(bad)])
    assert code == 1 and "error:" in err

    code, _, err = run(capsys, ["gen", "dodecahedron"])
    assert code == 1

    code, _, err = run(capsys, ["check", str(tmp_path / "missing.json")])
    assert code == 1

    # undersized cap trips the size guard
    code, out, _ = run(capsys, ["gen", "permutahedron", "4,3,2,1"])
    zdoc = tmp_path / "p4.json"
    zdoc.write_text(out)
    code, _, err = run(capsys, ["faces", str(zdoc), "--max-n", "3"])
    assert code == 2 and "error:" in err


def test_wrong_document_kind(capsys, tmp_path, abc):
    path = tmp_path / "p.json"
    path.write_text(dump_document(preorder_to_doc(chain(abc))))
    code, _, err = run(capsys, ["faces", str(path)])
    assert code == 1


def test_oracle_passes(capsys):
    code, out, _ = run(capsys, ["oracle"])
    assert code == 0
    assert "FAIL" not in out
