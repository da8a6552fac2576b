import json

import pytest

from coverhom.cli import _d_values, main
from coverhom.complexes import builtin_complex
from coverhom.propagator import singer_bands


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestDegreeSpecs:
    def test_single_and_range(self):
        assert _d_values("6") == [6]
        assert _d_values("2..5") == [2, 3, 4, 5]
        assert _d_values("3..3") == [3]

    def test_rejections(self):
        import argparse
        for bad in ("0", "-2", "5..2", "0..4", "a", "1..b", ""):
            with pytest.raises(argparse.ArgumentTypeError):
                _d_values(bad)


class TestHomologyCommand:
    def test_builtin(self, capsys):
        code, out, _ = run(capsys, "homology", "--input", "trefoil")
        assert code == 0
        assert "H_0 = R/(t - 1)" in out
        assert "H_1 = R/(t^2 - t + 1)" in out
        assert "H_2 = 0" in out

    def test_single_degree(self, capsys):
        code, out, _ = run(capsys, "homology", "--input", "trefoil",
                           "--degree", "1")
        assert code == 0
        assert "H_1" in out and "H_0" not in out

    def test_degree_out_of_range(self, capsys):
        code, _, err = run(capsys, "homology", "--input", "trefoil",
                           "--degree", "9")
        assert code == 2
        assert "error:" in err

    def test_json_report(self, capsys, tmp_path):
        path = tmp_path / "h.json"
        code, _, _ = run(capsys, "homology", "--input", "phi3",
                         "--json", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["field"] == "q"
        assert set(doc["homology"]) == {"0", "1"}

    def test_input_file(self, capsys, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps(builtin_complex("trefoil").to_json()))
        code, out, _ = run(capsys, "homology", "--input", str(path))
        assert code == 0
        assert "H_1 = R/(t^2 - t + 1)" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "homology", "--input", "/no/such/file.json")
        assert code == 2
        assert "cannot read" in err

    def test_bad_json_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{ not json")
        code, _, err = run(capsys, "homology", "--input", str(path))
        assert code == 2
        assert "not valid JSON" in err

    def test_document_field_mismatch(self, capsys, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps(builtin_complex("circle").to_json()))
        code, _, err = run(capsys, "homology", "--input", str(path),
                           "--field", "fp:5")
        assert code == 2
        assert "error:" in err

    def test_bad_field_descriptor(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "homology", "--input", "circle", "--field", "fp:6")
        assert exc.value.code == 2


class TestCoverCommand:
    def test_single_degree(self, capsys):
        code, out, _ = run(capsys, "cover", "--input", "trefoil", "--d", "6")
        assert code == 0
        assert "d=6: betti=[1, 3, 2]  (both routes agree)" in out

    def test_range(self, capsys):
        code, out, _ = run(capsys, "cover", "--input", "circle", "--d", "2..4")
        assert code == 0
        assert out.count("betti=[1, 1]") == 3

    def test_single_routes(self, capsys):
        code, out, _ = run(capsys, "cover", "--input", "wedge2", "--d", "5",
                           "--formula-only")
        assert code == 0
        assert "d=5: betti=[1, 6]  (formula route)" in out
        code, out, _ = run(capsys, "cover", "--input", "wedge2", "--d", "5",
                           "--oracle-only")
        assert "(oracle route)" in out

    def test_routes_mutually_exclusive(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "cover", "--input", "circle", "--d", "2",
                "--formula-only", "--oracle-only")
        assert exc.value.code == 2

    def test_bad_degree_spec(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "cover", "--input", "circle", "--d", "0")
        assert exc.value.code == 2

    def test_json_to_stdout(self, capsys):
        code, out, _ = run(capsys, "cover", "--input", "trefoil", "--d", "6",
                           "--json", "-")
        assert code == 0
        start = out.index("{")
        doc = json.loads(out[start:])
        assert doc["reports"][0]["betti_formula"] == [1, 3, 2]
        assert doc["reports"][0]["betti_oracle"] == [1, 3, 2]


class TestCertificateCommand:
    def test_trefoil(self, capsys):
        code, out, _ = run(capsys, "certificate", "--input", "trefoil",
                           "--degree", "1")
        assert code == 0
        assert "modulus=6" in out
        assert "d in [1, 5, 7, 11]" in out
        assert "witnesses: none in range" in out

    def test_phi3_witnesses(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        code, out, _ = run(capsys, "certificate", "--input", "phi3",
                           "--degree", "0", "--dmax", "9",
                           "--json", str(path))
        assert code == 0
        assert "witness: d=3" in out
        doc = json.loads(path.read_text())
        assert doc["modulus"] == 3
        assert doc["orders"] == {"k_level": [3], "km1_level": []}
        assert [w["d"] for w in doc["witnesses"]] == [3, 6, 9]

    def test_bad_degree(self, capsys):
        code, _, err = run(capsys, "certificate", "--input", "circle",
                           "--degree", "-1")
        assert code == 2

    def test_prime_field_rejected(self, capsys):
        code, _, err = run(capsys, "certificate", "--input", "circle",
                           "--field", "fp:5", "--degree", "0")
        assert code == 2
        assert "characteristic 0" in err


class TestPpowerCommand:
    def test_phi3(self, capsys):
        code, out, _ = run(capsys, "ppower", "--input", "phi3",
                           "--field", "fp:3", "--d", "9", "--degree", "0")
        assert code == 0
        assert "base dim 1" in out
        assert "3^2-cover dim 2" in out
        assert "equivalence holds" in out

    def test_needs_prime_field(self, capsys):
        code, _, err = run(capsys, "ppower", "--input", "phi3",
                           "--d", "3", "--degree", "0")
        assert code == 2
        assert "prime field" in err

    def test_d_must_be_prime_power(self, capsys):
        code, _, err = run(capsys, "ppower", "--input", "phi3",
                           "--field", "fp:3", "--d", "6", "--degree", "0")
        assert code == 2
        assert "not a positive power" in err
        code, _, err = run(capsys, "ppower", "--input", "phi3",
                           "--field", "fp:3", "--d", "1", "--degree", "0")
        assert code == 2

    def test_json(self, capsys, tmp_path):
        path = tmp_path / "pp.json"
        code, _, _ = run(capsys, "ppower", "--input", "circle",
                         "--field", "fp:2", "--d", "2", "--degree", "1",
                         "--json", str(path))
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc == {"p": 2, "r": 1, "k": 1, "base_dim": 1,
                       "cover_dim": 1, "equivalent": True}


class TestMvDeriveCommand:
    def test_even(self, capsys):
        code, out, _ = run(capsys, "mv-derive", "--n", "4", "--d", "3")
        assert code == 0
        assert "k in [0, 1, 3, 4]" in out
        assert "by glue from" in out

    def test_default_d(self, capsys):
        code, out, _ = run(capsys, "mv-derive", "--n", "5")
        assert code == 0
        assert "n=5 d=1" in out
        assert "k in [0, 1, 4, 5]" in out

    def test_axioms_file(self, capsys, tmp_path):
        path = tmp_path / "axioms.json"
        axioms = [{"space": s, "bands": singer_bands(dim)}
                  for s, dim in [("M", 4), ("V1", 3), ("V", 2)]]
        path.write_text(json.dumps(axioms))
        code, out, _ = run(capsys, "mv-derive", "--n", "4", "--d", "2",
                           "--input", str(path))
        assert code == 0
        assert "k in [0, 1, 3, 4]" in out

    def test_incomplete_axioms(self, capsys, tmp_path):
        path = tmp_path / "axioms.json"
        path.write_text(json.dumps([{"space": "M", "bands": [(0, 4)]}]))
        code, _, err = run(capsys, "mv-derive", "--n", "4",
                           "--input", str(path))
        assert code == 2
        assert "missing" in err

    def test_bad_dimension(self, capsys):
        code, _, err = run(capsys, "mv-derive", "--n", "1")
        assert code == 2

    def test_json_trace_replays(self, capsys, tmp_path):
        from coverhom.propagator import DerivationTrace
        path = tmp_path / "trace.json"
        code, _, _ = run(capsys, "mv-derive", "--n", "4", "--d", "2",
                         "--json", str(path))
        assert code == 0
        trace = DerivationTrace.from_json(json.loads(path.read_text()))
        trace.replay()
        assert trace.meta == {"n": 4, "d": 2}


class TestOracleCheckCommand:
    def test_seeded_run(self, capsys, tmp_path):
        path = tmp_path / "oc.json"
        code, out, _ = run(capsys, "oracle-check", "--seed", "5",
                           "--count", "3", "--dmax", "6", "--json", str(path))
        assert code == 0
        assert "seed = 5" in out
        assert "checked 3 random complexes" in out
        doc = json.loads(path.read_text())
        assert doc == {"seed": 5, "field": "q", "count": 3, "dmax": 6,
                       "ok": True}

    def test_deterministic(self, capsys, tmp_path):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "oracle-check", "--seed", "11", "--count", "2",
            "--dmax", "4", "--json", str(p1))
        run(capsys, "oracle-check", "--seed", "11", "--count", "2",
            "--dmax", "4", "--json", str(p2))
        assert p1.read_text() == p2.read_text()

    def test_prime_field(self, capsys):
        code, out, _ = run(capsys, "oracle-check", "--seed", "7",
                           "--field", "fp:5", "--count", "2", "--dmax", "4")
        assert code == 0
        assert "field = GF(5)" in out


class TestSelftestCommand:
    def test_passes(self, capsys, tmp_path):
        path = tmp_path / "st.json"
        code, out, _ = run(capsys, "selftest", "--json", str(path))
        assert code == 0
        assert "selftest passed" in out
        assert "FAIL" not in out
        doc = json.loads(path.read_text())
        assert doc["ok"] is True
        assert all(r["ok"] for r in doc["results"])
        assert len(doc["results"]) == out.count("ok   ")
