import json

import pytest

from wmha.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, corpus):
    assert run(capsys, "validate", corpus / "pair2.json")[0] == 0
    code, out, _ = run(capsys, "validate", corpus / "corrupted_table.json")
    assert code == 1 and "witness" in out and '"21", "12"' in out
    code, _, err = run(capsys, "validate", corpus / "missing.json")
    assert code == 2 and "cannot read" in err
    assert run(capsys, "validate", corpus / "cg2-unital.json")[0] == 0


def test_verify_families(capsys, corpus):
    code, out, _ = run(capsys, "verify", "--family", "kg", corpus / "pair2.json", "--oracle")
    assert code == 0 and out.rstrip().endswith("verdict: regular-wmha-star") and "oracle/S" in out
    code, out, _ = run(capsys, "verify", "--family", "cg", corpus / "z3group.json")
    assert code == 0 and out.rstrip().endswith("verdict: mha")
    code, out, _ = run(capsys, "verify", "--family", "weak-hopf", corpus / "cg2-unital.json")
    assert code == 0 and out.rstrip().endswith("verdict: weak-hopf")
    code, out, _ = run(capsys, "verify", "--family", "table-coproduct", corpus / "cg2-unital.json")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--family", "kg", corpus / "natpair.json", "--window", 3, "--trials", 10)
    assert code == 0 and out.rstrip().endswith("verdict: regular-wmha-star")


def test_verify_negative_and_usage_errors(capsys, corpus, tmp_path):
    code, out, _ = run(capsys, "verify", "--family", "kg", corpus / "corrupted_table.json")
    assert code == 1 and "not-wmha" in out
    assert run(capsys, "verify", "--family", "kg", corpus / "cg2-unital.json")[0] == 2
    assert run(capsys, "verify", "--family", "weak-hopf", corpus / "pair2.json")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "--family", "cg", bad)[0] == 2
    assert run(capsys, "verify", corpus / "pair2.json")[0] == 2          # --family is required
    assert run(capsys, "verify", "--family", "kg", corpus / "pair2.json", "--window", 0)[0] == 2


def test_pairing(capsys, corpus):
    code, out, _ = run(capsys, "pairing", corpus / "pair2.json", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "pass"
    m = d["pairing_matrix"]["entries"]
    assert m == [[["1", "0"] if i == j else ["0", "0"] for j in range(4)] for i in range(4)]
    code, out, _ = run(capsys, "pairing", corpus / "natpair.json", "--window", 4, "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["checks"][0]["detail"] == "100 quadruples"
    code, out, _ = run(capsys, "pairing", corpus / "union_z2_z3.json", "--format", "json")
    m = json.loads(out)["pairing_matrix"]
    # block diagonal: the Z2 block never meets the Z3 block
    assert all(m["entries"][i][j] == ["0", "0"] for i in range(2) for j in range(2, 5))
    assert code == 0


def test_report_merging(capsys, corpus, tmp_path):
    good, bad = tmp_path / "good.json", tmp_path / "bad.json"
    assert main(["verify", "--family", "cg", str(corpus / "pair2.json"), "--format", "json", "--out", str(good)]) == 0
    assert main(["validate", str(corpus / "corrupted_table.json"), "--format", "json", "--out", str(bad)]) == 1
    capsys.readouterr()
    code, out, _ = run(capsys, "report", good)
    assert code == 0 and "[ fail  ]" not in out and "combined verdict: pass" in out
    code, out, _ = run(capsys, "report", good, bad, "--format", "json")
    d = json.loads(out)
    assert code == 1 and d["verdict"] == "fail"
    assert "groupoid pair2 with a wrong product: groupoid/target-of-product" in d["failing"]
    assert run(capsys, "report")[0] == 2
    assert run(capsys, "report", corpus / "pair2.json")[0] == 2


def test_output_is_deterministic(capsys, corpus):
    args = ["verify", "--family", "kg", corpus / "action_z2.json", "--format", "json", "--seed", 11]
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first
