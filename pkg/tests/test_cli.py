import json

import pytest
from click.testing import CliRunner

from permroute import Literal, build_E, build_I
from permroute.cli import main
from permroute.formats import dumps_circuit, dumps_ids_instance
from permroute.transforms import IdsDistanceInstance
from permroute import IdsGeneratorSet, Permutation, Transposition


@pytest.fixture
def runner():
    return CliRunner()


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def one_clause_cnf(tmp_path):
    return write(tmp_path / "f.cnf", "p cnf 3 1\n1 2 3 0\n")


@pytest.fixture
def unsat_cnf(tmp_path):
    return write(tmp_path / "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n")


@pytest.fixture
def i_gadget_circuit(tmp_path):
    frag = build_I(Literal(1))
    return write(tmp_path / "i.json", dumps_circuit(frag.circuit, frag.polarization))


@pytest.fixture
def e_gadget_circuit(tmp_path):
    frag = build_E(Literal(1), Literal(2))
    return write(tmp_path / "e.json", dumps_circuit(frag.circuit, frag.polarization))


@pytest.fixture
def small_ids_instance(tmp_path):
    inst = IdsDistanceInstance(
        ids=IdsGeneratorSet(4, ((Transposition(1, 2), Transposition(3, 4)),)),
        pi=Permutation.from_cycles(4, [(1, 2, 3, 4)]),
        bound_k=0,
    )
    return write(tmp_path / "inst.json", dumps_ids_instance(inst))


class TestCountSat:
    def test_plain(self, runner, one_clause_cnf):
        result = runner.invoke(main, ["count", "sat", one_clause_cnf])
        assert result.exit_code == 0
        assert result.output.strip() == "7"

    def test_json(self, runner, one_clause_cnf):
        result = runner.invoke(main, ["count", "sat", one_clause_cnf, "--json"])
        payload = json.loads(result.output)
        assert payload["count"] == 7
        assert payload["schema_version"] == 1

    def test_parse_error_exit_2(self, runner, tmp_path):
        bad = write(tmp_path / "bad.cnf", "p cnf 1 1\n2 0\n")
        result = runner.invoke(main, ["count", "sat", bad])
        assert result.exit_code == 2
        assert "line 2" in result.output + (result.stderr or "")

    def test_cap_exit_2(self, runner, tmp_path):
        big = write(tmp_path / "big.cnf", "p cnf 30 1\n1 0\n")
        result = runner.invoke(main, ["count", "sat", big])
        assert result.exit_code == 2


class TestSolveDistance:
    def test_distance_and_decision(self, runner, small_ids_instance):
        result = runner.invoke(main, ["solve", "distance", small_ids_instance])
        assert result.exit_code == 0
        assert "distance = 1" in result.output
        assert "no" in result.output

    def test_decide_no_exit_1(self, runner, small_ids_instance):
        result = runner.invoke(main, ["solve", "distance", small_ids_instance, "--decide"])
        assert result.exit_code == 1

    def test_decide_yes_exit_0(self, runner, small_ids_instance):
        result = runner.invoke(
            main, ["solve", "distance", small_ids_instance, "--decide", "--k", "1"]
        )
        assert result.exit_code == 0

    def test_json_fields(self, runner, small_ids_instance):
        result = runner.invoke(main, ["solve", "distance", small_ids_instance, "--json"])
        payload = json.loads(result.output)
        assert payload["distance"] == 1
        assert payload["witness_subset"] == [1]
        assert payload["decision"] is False

    def test_membership_distance_zero(self, runner, tmp_path):
        inst = IdsDistanceInstance(
            ids=IdsGeneratorSet(2, ((Transposition(1, 2),),)),
            pi=Permutation((2, 1)),
            bound_k=0,
        )
        path = write(tmp_path / "member.json", dumps_ids_instance(inst))
        result = runner.invoke(main, ["solve", "distance", path, "--decide"])
        assert result.exit_code == 0
        assert "distance = 0" in result.output


class TestSolveRouting:
    def test_i_gadget(self, runner, i_gadget_circuit):
        result = runner.invoke(main, ["solve", "routing", i_gadget_circuit])
        assert result.exit_code == 0
        assert "max cycles = 2" in result.output
        assert "optimal routings = 1" in result.output

    def test_e_gadget(self, runner, e_gadget_circuit):
        result = runner.invoke(main, ["solve", "routing", e_gadget_circuit, "--json"])
        payload = json.loads(result.output)
        assert payload["max_cycles"] == 2
        assert payload["optimal_count"] == 2

    def test_decide_exit_codes(self, runner, i_gadget_circuit):
        yes = runner.invoke(main, ["solve", "routing", i_gadget_circuit, "--k", "2", "--decide"])
        assert yes.exit_code == 0
        no = runner.invoke(main, ["solve", "routing", i_gadget_circuit, "--k", "3", "--decide"])
        assert no.exit_code == 1

    def test_decide_requires_k(self, runner, i_gadget_circuit):
        result = runner.invoke(main, ["solve", "routing", i_gadget_circuit, "--decide"])
        assert result.exit_code == 2

    def test_invalid_circuit_exit_2(self, runner, tmp_path):
        bad = write(
            tmp_path / "bad.json",
            json.dumps({"vertices": [], "edges": [], "classes": []}),
        )
        result = runner.invoke(main, ["solve", "routing", bad])
        assert result.exit_code == 2

    def test_cap_exit_2(self, runner, e_gadget_circuit):
        result = runner.invoke(
            main, ["solve", "routing", e_gadget_circuit, "--max-routings", "1"]
        )
        assert result.exit_code == 2


class TestReduce:
    def test_sat2circuit_manifest(self, runner, one_clause_cnf, tmp_path):
        out = tmp_path / "circuit.json"
        result = runner.invoke(main, ["reduce", "sat2circuit", one_clause_cnf, str(out)])
        assert result.exit_code == 0
        manifest = json.loads((tmp_path / "circuit.json.manifest.json").read_text())
        assert manifest["m"] == 3
        assert manifest["b"] == 1
        assert manifest["kind"] == "sat2circuit"
        # the emitted circuit must load and validate
        from permroute.formats import loads_circuit

        circuit, pol = loads_circuit(out.read_text())
        assert pol.width <= 6

    def test_sat2circuit_deterministic(self, runner, one_clause_cnf, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        runner.invoke(main, ["reduce", "sat2circuit", one_clause_cnf, str(out1)])
        runner.invoke(main, ["reduce", "sat2circuit", one_clause_cnf, str(out2)])
        assert out1.read_bytes() == out2.read_bytes()

    def test_circuit2ids(self, runner, i_gadget_circuit, tmp_path):
        out = tmp_path / "inst.json"
        result = runner.invoke(
            main, ["reduce", "circuit2ids", i_gadget_circuit, str(out), "--k", "2"]
        )
        assert result.exit_code == 0
        payload = json.loads(out.read_text())
        assert payload["n"] == 2
        assert payload["k"] == 0
        manifest = json.loads((tmp_path / "inst.json.manifest.json").read_text())
        assert manifest["bound_k"] == 0

    def test_ids2circuit(self, runner, small_ids_instance, tmp_path):
        out = tmp_path / "circuit.json"
        result = runner.invoke(main, ["reduce", "ids2circuit", small_ids_instance, str(out)])
        assert result.exit_code == 0
        manifest = json.loads((tmp_path / "circuit.json.manifest.json").read_text())
        assert manifest["k_routing"] == 4  # n - bound = 4 - 0

    def test_two_point_ids2circuit_edge_count(self, runner, tmp_path):
        inst = IdsDistanceInstance(
            ids=IdsGeneratorSet(2, ((Transposition(1, 2),),)),
            pi=Permutation((2, 1)),
            bound_k=0,
        )
        path = write(tmp_path / "inst.json", dumps_ids_instance(inst))
        out = tmp_path / "c.json"
        runner.invoke(main, ["reduce", "ids2circuit", path, str(out)])
        payload = json.loads(out.read_text())
        assert len(payload["edges"]) == 4

    def test_kind_mismatch_exit_2(self, runner, i_gadget_circuit, tmp_path):
        result = runner.invoke(
            main,
            ["reduce", "ids2circuit", i_gadget_circuit, str(tmp_path / "x.json")],
        )
        assert result.exit_code == 2


class TestCheckParsimony:
    def test_satisfiable(self, runner, one_clause_cnf):
        result = runner.invoke(main, ["check", "parsimony", one_clause_cnf])
        assert result.exit_code == 0
        assert "parsimony: OK" in result.output

    def test_unsatisfiable_counts_agree_at_zero(self, runner, unsat_cnf):
        result = runner.invoke(main, ["check", "parsimony", unsat_cnf, "--json"])
        payload = json.loads(result.output)
        assert result.exit_code == 0
        assert payload["satisfying_assignments"] == 0
        assert payload["routings_at_m"] == 0
        assert payload["elements_at_translated_distance"] == 0
        assert payload["max_cycles"] < payload["m"]
        assert payload["satisfiable"] is False

    def test_json_counts(self, runner, one_clause_cnf):
        result = runner.invoke(main, ["check", "parsimony", one_clause_cnf, "--json"])
        payload = json.loads(result.output)
        assert (
            payload["satisfying_assignments"]
            == payload["routings_at_m"]
            == payload["elements_at_translated_distance"]
            == 7
        )

    def test_report_dir(self, runner, one_clause_cnf, tmp_path):
        report = tmp_path / "report"
        result = runner.invoke(
            main, ["check", "parsimony", one_clause_cnf, "--report-dir", str(report)]
        )
        assert result.exit_code == 0
        assert (report / "parsimony.csv").exists()
        assert (report / "cycle_distribution.csv").exists()
        assert (report / "cycles.png").exists()
        assert (report / "circuit.png").exists()
        rows = (report / "cycle_distribution.csv").read_text().splitlines()
        assert rows[0] == "cycles,routings"

    def test_single_literal_counts_all_one(self, runner, tmp_path):
        path = write(tmp_path / "one.cnf", "p cnf 1 1\n1 0\n")
        result = runner.invoke(main, ["check", "parsimony", path, "--json"])
        payload = json.loads(result.output)
        assert result.exit_code == 0
        assert (
            payload["satisfying_assignments"]
            == payload["routings_at_m"]
            == payload["elements_at_translated_distance"]
            == 1
        )
        assert payload["m"] == 2

    def test_tautology_only_formula(self, runner, tmp_path):
        # normalizes to an empty conjunction: trivially satisfiable once
        path = write(tmp_path / "taut.cnf", "p cnf 1 1\n1 -1 0\n")
        result = runner.invoke(main, ["check", "parsimony", path, "--json"])
        payload = json.loads(result.output)
        assert result.exit_code == 0
        assert (
            payload["satisfying_assignments"]
            == payload["routings_at_m"]
            == payload["elements_at_translated_distance"]
            == 1
        )


class TestVerifyGadgets:
    def test_clean_pass(self, runner):
        result = runner.invoke(main, ["verify", "gadgets"])
        assert result.exit_code == 0
        assert "22 rows checked, 0 mismatches" in result.output

    def test_json(self, runner):
        result = runner.invoke(main, ["verify", "gadgets", "--json"])
        payload = json.loads(result.output)
        assert payload["ok"] is True
        assert len(payload["rows"]) == 22

    def test_report_dir(self, runner, tmp_path):
        report = tmp_path / "gadgets"
        result = runner.invoke(main, ["verify", "gadgets", "--report-dir", str(report)])
        assert result.exit_code == 0
        assert (report / "gadget_tables.csv").exists()
        for name in "IEFGA":
            assert (report / f"gadget_{name}.png").exists()

    def test_corrupted_gadget_exits_nonzero_naming_row(self, runner, monkeypatch):
        from permroute.errors import GadgetVerificationError
        from permroute.gadgets import GadgetReport, GadgetTableRow

        def broken():
            rows = (GadgetTableRow("I", (0,), 1, 2),)
            raise GadgetVerificationError(
                "gadget I at assignment (0,): expected 1 cycles, got 2",
                report=GadgetReport(rows),
            )

        monkeypatch.setattr("permroute.cli.verify_gadget_tables", broken)
        result = runner.invoke(main, ["verify", "gadgets"])
        assert result.exit_code == 1
        combined = result.output + (result.stderr or "")
        assert "gadget I at assignment (0,)" in combined


class TestDeterminism:
    def test_identical_invocations_identical_bytes(self, runner, one_clause_cnf):
        a = runner.invoke(main, ["check", "parsimony", one_clause_cnf, "--json"])
        b = runner.invoke(main, ["check", "parsimony", one_clause_cnf, "--json"])
        assert a.output == b.output

    def test_verify_gadgets_stable(self, runner):
        a = runner.invoke(main, ["verify", "gadgets", "--json"])
        b = runner.invoke(main, ["verify", "gadgets", "--json"])
        assert a.output == b.output
