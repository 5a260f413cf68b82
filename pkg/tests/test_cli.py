import json

import pytest

from legkit.cli import main

BASIC = "L 1\nR 1\n"


@pytest.fixture
def basic_file(tmp_path):
    p = tmp_path / "basic.lfd"
    p.write_text(BASIC)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestInvariants:
    def test_basic(self, capsys, basic_file):
        code, out, _ = run(capsys, "invariants", basic_file)
        assert code == 0
        assert "tb=-1 r=0" in out and "range=yes" in out

    def test_open_diagram_exit_one(self, capsys, tmp_path):
        p = tmp_path / "open.lfd"
        p.write_text("L 1\n")
        code, _, err = run(capsys, "invariants", str(p))
        assert code == 1
        assert "OpenDiagram" in err

    def test_json(self, capsys, basic_file):
        code, out, _ = run(capsys, "invariants", basic_file, "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["components"][0]["tb"] == -1
        assert payload["components"][0]["range"] is True

    def test_orient_flag_negates_r(self, capsys, tmp_path):
        p = tmp_path / "stab.lfd"
        p.write_text("L 1\nL 1\nR 2\nR 1\n")
        _, out_default, _ = run(capsys, "invariants", str(p), "--json")
        _, out_rev, _ = run(capsys, "invariants", str(p), "--orient", "0:-", "--json")
        r0 = json.loads(out_default)["components"][0]["r"]
        r1 = json.loads(out_rev)["components"][0]["r"]
        assert r1 == -r0 != 0


class TestCatalog:
    def test_front(self, capsys):
        code, out, _ = run(capsys, "catalog", "--tb", "-1", "--r", "0", "--front")
        assert code == 0
        assert out.strip() == "L 1\nR 1"

    def test_out_of_range_exit_one(self, capsys):
        code, _, err = run(capsys, "catalog", "--tb", "-2", "--r", "0")
        assert code == 1
        assert "OutOfRange" in err

    def test_svg_well_formed(self, capsys):
        import xml.etree.ElementTree as ET

        code, out, _ = run(capsys, "catalog", "--tb", "-5", "--r", "2", "--svg")
        assert code == 0
        root = ET.fromstring(out)
        assert root.tag.endswith("svg")

    def test_svg_cusp_count(self, capsys):
        code, out, _ = run(capsys, "catalog", "--tb", "-3", "--r", "0", "--front")
        assert code == 0
        events = [l for l in out.splitlines() if l and l[0] in "LR"]
        assert len(events) == 6  # catalog (-3, 0) has six cusps

    def test_determinism(self, capsys):
        _, a, _ = run(capsys, "catalog", "--tb", "-7", "--r", "4", "--front")
        _, b, _ = run(capsys, "catalog", "--tb", "-7", "--r", "4", "--front")
        assert a == b


class TestTree2Front:
    def test_single_edge(self, capsys, tmp_path):
        p = tmp_path / "edge.sat"
        p.write_text("v 0 0 0 +\nv 1 1 0 -\ne 0 1\n")
        code, out, _ = run(capsys, "tree2front", str(p))
        assert code == 0
        assert out.strip() == "L 1\nR 1"

    def test_normalize_matches_catalog(self, capsys, tmp_path):
        p = tmp_path / "tree.sat"
        # 5-vertex tree with a fork
        p.write_text(
            "v 0 0 0 +\nv 1 1 0 -\nv 2 2 1/8 +\nv 3 2 -1/8 +\nv 4 3 0 -\n"
            "e 0 1\ne 1 2\ne 1 3\ne 2 4\n"
        )
        code, out, _ = run(capsys, "tree2front", str(p), "--normalize")
        _, cat, _ = run(capsys, "catalog", "--tb", "-4", "--r", "1", "--front")
        assert code == 0
        assert out == cat

    def test_bad_signing_exit_one(self, capsys, tmp_path):
        p = tmp_path / "bad.sat"
        p.write_text("v 0 0 0 +\nv 1 1 0 +\ne 0 1\n")
        code, _, err = run(capsys, "tree2front", str(p))
        assert code == 1
        assert "BadSigning" in err


class TestFoliate:
    def test_skeleton_single_edge(self, capsys, tmp_path):
        code, out, _ = run(capsys, "foliate", "--tb", "-1", "--r", "0", "--skeleton")
        assert code == 0
        assert out.count("\nv ") + out.startswith("v ") == 2
        assert "e " in out

    def test_trace_preserves_differences(self, capsys):
        code, out, _ = run(capsys, "foliate", "--tb", "-3", "--r", "0", "--raw", "--trace")
        assert code == 0
        naf_lines = [l for l in out.splitlines()
                     if l.startswith("#") and "post-NAF" not in l and ":" in l]
        for line in naf_lines:
            deltas = dict.fromkeys(("e+", "h+", "e-", "h-"), 0)
            for token in line.split(":", 1)[1].split():
                for key in deltas:
                    if token.startswith(key):
                        deltas[key] += int(token[len(key):])
            assert deltas["e+"] - deltas["h+"] == 0
            assert deltas["e-"] - deltas["h-"] == 0

    def test_tb_zero_exit_one(self, capsys):
        code, _, err = run(capsys, "foliate", "--tb", "0", "--r", "1")
        assert code == 1
        assert "BadInvariants" in err


class TestClassify:
    def test_exceptional_member(self, capsys):
        code, out, _ = run(
            capsys, "classify", "exceptional", "--hopf", "-1", "--tb", "1", "--r", "0"
        )
        assert code == 0
        assert "exceptional class exists" in out

    def test_hopf_lutz_literal(self, capsys):
        code, out, _ = run(capsys, "classify", "hopf-lutz", "--sl", "-1,-1,-1", "--lk", "1")
        assert code == 0
        assert out.strip() == "3"

    def test_hopf_lutz_front(self, capsys, basic_file):
        code, out, _ = run(capsys, "classify", "hopf-lutz", "--front", basic_file)
        assert code == 0
        assert out.strip() == "-1"

    def test_d3(self, capsys):
        code, out, _ = run(capsys, "classify", "d3", "--hopf", "-1")
        assert code == 0
        assert out.strip() == "1/2"

    def test_tight_unknot_verdict(self, capsys):
        code, out, _ = run(
            capsys, "classify", "tight-unknot", "--a", "-1,0", "--b", "-1,0", "--json"
        )
        assert code == 0
        assert json.loads(out)["status"] == "isotopic"


class TestRender:
    def test_ascii_eye(self, capsys, basic_file):
        code, out, _ = run(capsys, "render", basic_file, "--format", "ascii")
        assert code == 0
        assert "<" in out and ">" in out and "-" in out

    def test_lift_csv_closure(self, capsys, basic_file):
        code, out, _ = run(capsys, "render", basic_file, "--lift-csv", "--samples", "4000")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,y,z"
        import numpy as np

        data = np.array([[float(v) for v in l.split(",")] for l in lines[1:]])
        x, y = data[:, 0], data[:, 1]
        xs = np.append(x, x[0])
        ys = np.append(y, y[0])
        closure = float(np.sum((ys[1:] + ys[:-1]) / 2 * np.diff(xs)))
        assert abs(closure) < 1e-6


class TestExitCodes:
    def test_usage_error_is_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["catalog"])  # missing required flags
        assert exc.value.code == 2

    def test_fuzz_ok(self, capsys, monkeypatch):
        monkeypatch.setenv("LEGKIT_SEED", "777")
        code, out, _ = run(capsys, "fuzz", "--count", "20")
        assert code == 0
        assert "seed 777" in out
