import json

from selgrowth.cli import main

EXPECTED_LIST = ["91b1", "91b2", "91b3", "123a1", "123a2", "141a1", "142a1", "155a1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_relations_c2xc2(capsys):
    doc = run_json(capsys, "relations", "c2xc2")
    assert doc["rank"] == 1
    assert doc["basis"][0]["norm"] == {"2": 1}
    assert doc["basis"][0]["coeffs"] == {
        "1": 1, "C2a": -1, "C2b": -1, "C2c": -1, "G": 2,
    }


def test_relations_deterministic(capsys):
    a = run(capsys, "relations", "d:5")
    b = run(capsys, "relations", "d:5")
    assert a == b


def test_tables_all_pass(capsys):
    for spec in ("d:5", "c2xc2", "cpxcp:3", "sd:7:3"):
        doc = run_json(capsys, "tables", spec)
        assert doc["all_pass"], spec
        assert all(c["oracle"] == "PASS" for c in doc["cells"])
        assert doc["unreachable_observed"] == []


def test_analyze(capsys):
    doc = run_json(capsys, "analyze", "--curve", "1,0,0,-1,0", "--rank", "1")
    assert doc["invariants"]["delta_min"] == 65
    assert doc["semistable"] is True
    assert {p["v"]: p["kind"] for p in doc["bad_places"]} == {
        5: "nonsplit_mult", 13: "nonsplit_mult",
    }


def test_certify_example2(capsys):
    doc = run_json(
        capsys,
        "certify", "--curve", "1,0,0,-1,0", "--rank", "1", "--sha-trivial", "2",
        "--torsion", "2", "--field", "mq:3,5", "-p", "2",
    )
    assert doc["ord_p"]["sha_quotient"] == 2
    assert doc["conditional_prediction"]["sha_p_primary_order"] == 4


def test_certify_with_local_class_override(capsys):
    doc = run_json(
        capsys,
        "certify", "--curve", "1,0,0,-1,0", "--rank", "1", "--torsion", "2",
        "--field", "mq:3,5", "-p", "2",
        "--local-class", "5:D=1,I=1", "--local-class", "13:D=1,I=1",
    )
    assert doc["ord_p"]["tamagawa_quotient"] == 0
    assert doc["ord_p"]["sha_quotient"] == 1


def test_certify_refuses_nonsemistable(capsys):
    code, out, err = run(
        capsys,
        "certify", "--curve", "0,0,1,0,-7", "--rank", "0", "--field", "mq:3,5",
        "-p", "2",
    )
    assert code == 2
    assert "additive" in err


def test_certify_abstract_field_needs_overrides(capsys):
    code, out, err = run(
        capsys,
        "certify", "--curve", "1,0,0,-1,0", "--rank", "1", "--group", "d:3", "-p", "3",
    )
    assert code == 2
    assert "local class" in err.lower() or "local-class" in err.lower()


def test_certify_wrong_prime_is_usage_error(capsys):
    code, out, err = run(
        capsys,
        "certify", "--curve", "1,0,0,-1,0", "--rank", "1", "--field", "mq:3,5",
        "-p", "3",
    )
    assert code == 1


def test_scan_cli(capsys, data_path):
    doc = run_json(capsys, "scan", "--data", str(data_path))
    assert doc["labels"] == EXPECTED_LIST
    doc = run_json(capsys, "scan", "--data", str(data_path), "--torsion-free")
    assert doc["labels"] == ["91b3", "123a2", "141a1", "142a1"]


def test_scan_env_var(capsys, data_path, monkeypatch):
    monkeypatch.setenv("SGL_DATA", str(data_path))
    doc = run_json(capsys, "scan")
    assert doc["labels"] == EXPECTED_LIST


def test_label_lookup(capsys, data_path):
    doc = run_json(
        capsys,
        "certify", "--label", "65a1", "--data", str(data_path),
        "--sha-trivial", "2", "--field", "mq:3,5", "-p", "2",
    )
    assert doc["curve"]["label"] == "65a1"
    assert doc["ord_p"]["sha_quotient"] == 2


def test_usage_errors_exit_1(capsys):
    code, out, err = run(capsys, "certify", "--curve", "1,0,0,-1,0", "-p", "2")
    assert code == 1 and "rank" in err
    code, out, err = run(capsys, "relations", "nonsense")
    assert code == 1
    code, out, err = run(capsys, "scan")
    assert code == 1 and "SGL_DATA" in err


def test_certificate_cli_round_trip(capsys, data_path):
    args = (
        "certify", "--label", "91b1", "--data", str(data_path),
        "--sha-trivial", "3", "--field", "poly:1,0,61,-16,1603,1168,16831",
        "--group", "d:3", "-p", "3",
    )
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    doc = json.loads(first[1])
    assert doc["ord_p"]["sha_quotient"] == 1
