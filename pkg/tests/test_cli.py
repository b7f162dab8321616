"""End-to-end checks of the command line contract."""

import json

import pytest

from braidedthompson.cli import main
from braidedthompson.diagram import Diagram, x_gen
from braidedthompson.simplicial import SimplicialComplex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.strip()


class TestVerdictExamples:
    def test_sigma_convex_hull(self, capsys):
        code, out = run(capsys, "char", "sigma", "--a", "1", "--b", "1", "--c", "0", "--d", "0", "--m", "2")
        assert code == 0
        assert out == "NOT-IN-SIGMA (region: convex hull)"

    def test_sigma_membership(self, capsys):
        code, out = run(capsys, "char", "sigma", "--a", "-1", "--b", "0", "--c", "0", "--d", "0", "--m", "5")
        assert code == 0
        assert out == "IN-SIGMA"

    def test_winding_of_named_twist(self, capsys):
        code, out = run(capsys, "braid", "winding", "--n", "4", "--word", "twist2", "--i", "2", "--j", "3")
        assert (code, out) == (0, "1")

    def test_path_homology_lines(self, capsys):
        code, out = run(capsys, "complex", "homology", "--matching", "--path-edges", "5")
        assert code == 0
        assert "H1 = Z" in out.splitlines()


class TestBraid:
    def test_compose_reduces_freely(self, capsys):
        code, out = run(capsys, "braid", "compose", "--n", "3", "--word", "[1,2]", "--word", "[-2,-1,1]")
        assert code == 0
        assert json.loads(out) == {"strands": 3, "letters": [1]}

    def test_equal(self, capsys):
        code, out = run(capsys, "braid", "equal", "--n", "2", "--lhs", "[1,1,-1]", "--rhs", "[1]")
        assert (code, out) == (0, "EQUAL")

    def test_twist_json(self, capsys):
        code, out = run(capsys, "braid", "twist", "--n", "2")
        assert json.loads(out) == {"strands": 2, "letters": [1, 1]}


class TestElement:
    def test_generator_roundtrip(self, capsys):
        code, out = run(capsys, "element", "generator", "--address", "1")
        assert code == 0
        assert Diagram.from_json(json.loads(out)).equals(x_gen("1"))

    def test_multiply_then_equal(self, capsys, tmp_path):
        _, gen = run(capsys, "element", "generator", "--address", "")
        p = tmp_path / "x.json"
        p.write_text(gen)
        code, out = run(capsys, "element", "multiply", "--lhs", f"@{p}", "--rhs", f"@{p}")
        assert code == 0
        sq = tmp_path / "sq.json"
        sq.write_text(out)
        code, out = run(capsys, "element", "equal", "--lhs", f"@{sq}", "--rhs", f"@{p}")
        assert (code, out) == (0, "NOT-EQUAL")

    def test_member_and_classify(self, capsys):
        _, gen = run(capsys, "element", "generator", "--address", "")
        code, out = run(capsys, "element", "member", "--element", gen, "--address", "0")
        assert (code, out) == (0, "NOT-IN")
        code, out = run(capsys, "element", "classify", "--element", gen, "--json")
        assert json.loads(out) == {"in_F": True, "in_Fbr": True}

    def test_rewrite_exponents(self, capsys, tmp_path):
        _, gen = run(capsys, "element", "generator", "--address", "")
        p = tmp_path / "x.json"
        p.write_text(gen)
        _, sq = run(capsys, "element", "multiply", "--lhs", f"@{p}", "--rhs", f"@{p}")
        code, out = run(capsys, "element", "rewrite", "--element", sq, "--address", "")
        data = json.loads(out)
        assert code == 0
        assert (data["k_minus"], data["k_plus"]) == (2, 0)

    def test_psi_in_domain(self, capsys):
        _, gen = run(capsys, "element", "generator", "--address", "1")
        code, out = run(capsys, "element", "psi", "--element", gen, "--n", "1")
        assert code == 0
        assert json.loads(out)["letters"] == []

    def test_psi_out_of_domain(self, capsys):
        _, gen = run(capsys, "element", "generator", "--address", "")
        assert main(["element", "psi", "--element", gen, "--n", "1"]) == 2


class TestChar:
    def test_image(self, capsys):
        _, gen = run(capsys, "element", "generator", "--address", "")
        code, out = run(capsys, "char", "image", "--element", gen, "--json")
        assert json.loads(out) == {
            "left_depth": -1,
            "right_depth": 1,
            "end_winding": 0,
            "adjacent_winding": 0,
        }

    def test_evaluate_fraction(self, capsys):
        _, gen = run(capsys, "element", "generator", "--address", "")
        code, out = run(capsys, "char", "evaluate", "--a", "1/3", "--element", gen)
        assert (code, out) == (0, "-1/3")

    def test_finiteness_verdicts(self, capsys):
        code, out = run(capsys, "char", "finiteness", "--generators", "[[1,1,0,0],[0,0,1,0],[0,0,0,1]]")
        assert (code, out) == (0, "F_infinity")
        code, out = run(capsys, "char", "finiteness", "--generators", "[[0,0,0,0]]", "--json")
        assert json.loads(out)["verdict"] == "not_F1"


class TestComplex:
    def test_matching_json_and_dot(self, capsys, tmp_path):
        dot = tmp_path / "k.dot"
        code, out = run(capsys, "complex", "matching", "--path-edges", "3", "--dot", str(dot))
        assert code == 0
        k = SimplicialComplex.from_json(json.loads(out))
        assert len(k.vertices) == 3
        assert dot.read_text().startswith("graph")

    def test_complex_from_file(self, capsys, tmp_path):
        _, blob = run(capsys, "complex", "matching", "--path-edges", "4")
        p = tmp_path / "k.json"
        p.write_text(blob)
        code, out = run(capsys, "complex", "flag", "--file", str(p))
        assert (code, out) == (0, "FLAG")

    def test_distance(self, capsys):
        code, out = run(capsys, "complex", "distance", "--matching", "--complete", "5", "--u", "[1,2]", "--v", "[1,3]")
        assert (code, out) == (0, "2")

    def test_connectivity_json(self, capsys):
        code, out = run(capsys, "complex", "connectivity", "--matching", "--path-edges", "5", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["homological_connectivity"] == 0
        assert data["simply_connected"] is False

    def test_source_exclusive(self, capsys):
        assert main(["complex", "flag", "--path-edges", "3", "--complete", "4"]) == 2


class TestStein:
    def test_patch_summary(self, capsys):
        code, out = run(capsys, "stein", "patch", "--height-bound", "3", "--braid-bound", "1", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["vertices"] == sum(data["heights"].values())

    def test_asc_link(self, capsys):
        code, out = run(capsys, "stein", "asc-link", "--height", "4", "--json")
        assert json.loads(out) == {"dimension": 3, "f_vector": [4, 6, 4, 1]}

    def test_desc_link_states_bound(self, capsys):
        code, out = run(capsys, "stein", "desc-link", "--height", "3", "--braid-bound", "2")
        assert code == 0
        assert "braid bound 2" in out

    def test_cube_span_verdicts(self, capsys):
        code, out = run(capsys, "stein", "cube-span", "--height", "4", "--downs", "[1]", "--ups", "[3]", "--json")
        assert code == 0
        assert json.loads(out)["spanned"] is True
        code, out = run(capsys, "stein", "cube-span", "--height", "4", "--downs", "[1]", "--ups", "[2]")
        assert code == 0
        assert out.startswith("SUPPORT-OVERLAP")

    def test_check_writes_reports(self, capsys, tmp_path):
        csv_path = tmp_path / "patch.csv"
        figs = tmp_path / "figs"
        code, out = run(
            capsys, "stein", "check", "--height-bound", "3", "--braid-bound", "1",
            "--depth", "1", "--csv", str(csv_path), "--figures", str(figs), "--json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["all_links_flag"] and data["all_links_full"]
        assert csv_path.read_text().startswith("field,value")
        assert (figs / "patch.png").stat().st_size > 0


class TestVerify:
    def test_pass_lines(self, capsys):
        code, out = run(capsys, "verify", "winding-table")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 6
        assert all(line.startswith("[PASS] winding-table:") for line in lines)

    def test_json_rows(self, capsys):
        code, out = run(capsys, "verify", "f-relations", "--json")
        rows = json.loads(out)
        assert code == 0
        assert all(row["passed"] for row in rows)

    def test_seeded_sampling(self, capsys):
        code, out = run(capsys, "verify", "lemma-conj", "--samples", "3", "--seed", "7")
        assert code == 0
        assert "strictness" in out

    def test_reports_written(self, capsys, tmp_path):
        csv_path = tmp_path / "rows.csv"
        figs = tmp_path / "figs"
        code, _ = run(capsys, "verify", "sigma-table", "--csv", str(csv_path), "--figures", str(figs))
        assert code == 0
        assert csv_path.read_text().splitlines()[0] == "suite,name,passed,detail"
        assert (figs / "sigma-table.png").stat().st_size > 0

    def test_unknown_suite(self, capsys):
        assert main(["verify", "no-such-suite"]) == 2


class TestRoundtrip:
    def cases(self, capsys, tmp_path):
        _, gen = run(capsys, "element", "generator", "--address", "0")
        _, k = run(capsys, "complex", "matching", "--path-edges", "3")
        return [
            gen,
            '{"strands": 3, "letters": [1, -1, 2]}',
            k,
            '["0", "10", "11"]',
            '{"left_depth": "1/2", "right_depth": "0", "end_winding": "3", "adjacent_winding": "0"}',
        ]

    def test_idempotent(self, capsys, tmp_path):
        for blob in self.cases(capsys, tmp_path):
            p = tmp_path / "in.json"
            p.write_text(blob)
            code, once = run(capsys, "roundtrip", str(p))
            assert code == 0
            p.write_text(once)
            code, twice = run(capsys, "roundtrip", str(p))
            assert (code, twice) == (0, once)

    def test_canonicalizes(self, capsys, tmp_path):
        p = tmp_path / "braid.json"
        p.write_text('{"strands": 2, "letters": [1, -1, 1]}')
        code, out = run(capsys, "roundtrip", str(p))
        assert json.loads(out) == {"strands": 2, "letters": [1]}

    def test_malformed_address(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text('["02", "1"]')
        assert main(["roundtrip", str(p)]) == 2

    def test_unknown_shape(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text('{"what": 1}')
        assert main(["roundtrip", str(p)]) == 2


class TestUsage:
    def test_missing_subcommand(self, capsys):
        assert main([]) == 2

    def test_bad_json_inline(self, capsys):
        assert main(["element", "reduce", "--element", "{not json"]) == 2
