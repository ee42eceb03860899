import json
import subprocess
import sys
from fractions import Fraction

import pytest

from treecap import io
from treecap.cli import main
from treecap.families import CantorSpec, gen_cantor
from treecap.interpolate import build_disjoint_family
from treecap.verify import antichain_max, verify_family

from golden_cases import GOLDEN


def test_seq_round_trip_is_byte_identical():
    Z = gen_cantor(CantorSpec(2, 4, 3))
    text = io.dumps(io.seq_to_json(Z))
    assert io.seq_from_json(io.loads(text, "tree_seq")) == Z
    assert io.dumps(io.loads(text)) == text


def test_numbers():
    assert io.number(Fraction(3, 7)) == "3/7"
    assert io.parse_number("3/7") == Fraction(3, 7)
    assert io.parse_number(0.5) == 0.5
    with pytest.raises(io.SchemaError):
        io.parse_number([1])


def test_schema_version_and_kind_enforced():
    with pytest.raises(io.SchemaError):
        io.loads('{"schema_version": 2, "kind": "tree_seq", "nodes": []}')
    with pytest.raises(io.SchemaError):
        io.loads('{"kind": "tree_seq"}')
    with pytest.raises(io.SchemaError):
        io.loads('{"schema_version": 1, "kind": "capacities"}', "tree_seq")
    with pytest.raises(io.SchemaError):
        io.loads("{not json")


def test_family_round_trip_verifies_in_rational_mode():
    F = build_disjoint_family(gen_cantor(CantorSpec(2, 4, 2)), exact=True)
    obj = io.loads(io.dumps(io.family_to_json(F)))
    rep = verify_family(obj, regions=50)
    assert rep.passed, rep.to_json()


def test_verify_detects_tampering():
    F = build_disjoint_family(gen_cantor(CantorSpec(2, 4, 2)))
    obj = io.loads(io.dumps(io.family_to_json(F)))
    z = obj["sequence"][1]
    obj["members"][z][obj["sequence"][2]] = 0.5
    rep = verify_family(obj, regions=10)
    failed = {c.name for c in rep.checks if not c.passed}
    assert "kronecker_exact" in failed


def test_antichain_max_independent_recursion():
    assert antichain_max({"0": 1.0, "00": 0.75, "01": 0.75, "1": -2.0}) == 3.5


def test_cli_exit_codes(tmp_path, capsys):
    seq = tmp_path / "c.json"
    assert main(["gen", "--cantor", "a=2", "b=4", "N=2", "-o", str(seq)]) == 0
    assert main(["check", "--seq", str(seq), "--all", "--assert", "weak_simple=2"]) == 0
    assert main(["check", "--seq", str(seq), "--all", "--assert", "weak_simple=0.5"]) == 1
    assert main(["check", "--seq", str(seq), "--assert", "tree_sep=0.9"]) == 1
    assert main(["gen", "--comb", "depth0=0", "N=1", "b=1"]) == 2
    assert main(["cap", "--seq", str(tmp_path / "missing.json")]) == 2
    assert main(["cap", "--seq", str(seq), "--at", "0101"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1, "kind": "tree_seq", "nodes": ["012"]}')
    assert main(["check", "--seq", str(bad), "--all"]) == 2
    capsys.readouterr()


def test_cli_rational_mode_and_node_cap(tmp_path, capsys, monkeypatch):
    small, big = tmp_path / "s.json", tmp_path / "b.json"
    main(["gen", "--comb", "depth0=3", "N=2", "b=4", "-o", str(small)])
    main(["gen", "--comb", "depth0=10", "N=100", "b=100", "-o", str(big)])
    capsys.readouterr()
    assert main(["cap", "--seq", str(small), "--at", "z0", "--arith", "rational",
                 "--method", "both"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["results"][0]["recursive"] == "9/29" == out["results"][0]["oracle"]
    assert main(["cap", "--seq", str(big), "--arith", "rational"]) == 2
    monkeypatch.setenv("TREECAP_TOL", "-1")
    assert main(["cap", "--seq", str(small)]) == 2


def test_cli_gen_from_spec_file(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(io.dumps(io.envelope("generator_spec", family="comb",
                                         params={"depth0": 10, "N": 100, "b": 100})))
    out = tmp_path / "z.json"
    assert main(["gen", "--spec", str(spec), "-o", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / "comb.json").read_bytes()
    assert len(json.loads(out.read_text())["nodes"]) == 101


def test_extremal_and_verify_commands(tmp_path, capsys):
    seq, fam = tmp_path / "c.json", tmp_path / "f.json"
    main(["gen", "--cantor", "a=2", "b=4", "N=2", "-o", str(seq)])
    assert main(["extremal", "--seq", str(seq), "--at", "z0"]) == 0
    res = json.loads(capsys.readouterr().out)["results"][0]
    assert res["harmonic_residual"] < 1e-10
    assert main(["interpolate", "--seq", str(seq), "-o", str(fam)]) == 0
    assert main(["verify", "--family", str(fam), "--regions", "20"]) == 0


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "treecap", "gen", "--comb", "depth0=3",
                        "N=2", "b=2"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["kind"] == "tree_seq"
