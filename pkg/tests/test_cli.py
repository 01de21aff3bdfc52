import json
from pathlib import Path

from conley_kernel.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fx(name):
    return str(FIXTURES / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCheck:
    def test_doubling_unit_not_compactifiable(self, capsys):
        code, out, _ = run(capsys, "check", fx("doubling.json"),
                           "--set", "unit", "--json")
        assert code == 0
        table = json.loads(out)["table"]
        assert table["unit"]["compactifiable"] is False
        assert table["unit"]["induced domain open in E"] is False

    def test_doubling_origin_compactifiable(self, capsys):
        code, out, _ = run(capsys, "check", fx("doubling.json"),
                           "--set", "origin", "--json")
        assert code == 0
        assert json.loads(out)["table"]["origin"]["compactifiable"] is True

    def test_finite_document_all_true(self, capsys):
        code, out, _ = run(capsys, "check", fx("attractor.json"), "--json")
        assert code == 0
        table = json.loads(out)["table"]
        assert all(v["compactifiable"] for v in table.values())


class TestInvariantPart:
    def test_exact(self, capsys):
        code, out, _ = run(capsys, "invariant-part", fx("doubling.json"),
                           "--set", "unit", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "exact"
        assert payload["invariant_part"] == [[["0", True, "0", True]]]

    def test_unknown_exits_3(self, capsys):
        code, _, _ = run(capsys, "invariant-part", fx("shift2d.json"),
                         "--set", "step_zero", "--bound", "6")
        assert code == 3


class TestCertificates:
    def test_isolating(self, capsys):
        code, _, _ = run(capsys, "isolating", fx("doubling.json"),
                         "--set", "S", "--nbhd", "unit")
        assert code == 0

    def test_index_nbhd_failure(self, capsys):
        code, _, _ = run(capsys, "index-nbhd", fx("doubling.json"),
                         "--set", "S", "--nbhd", "unit")
        assert code == 1

    def test_flow_discriminator(self, capsys):
        good, _, _ = run(capsys, "index-nbhd", fx("clamp_flow.json"),
                         "--set", "S", "--nbhd", "unit")
        bad, out, _ = run(capsys, "index-nbhd", fx("clamp_flow.json"),
                          "--set", "S", "--nbhd", "halfopen", "--json")
        assert good == 0 and bad == 1
        assert "finite-time proper" in json.loads(out)["reason"]


class TestSimAdmissible:
    def test_sim_equivalent(self, capsys):
        code, _, _ = run(capsys, "sim", fx("shift2d.json"),
                         "--from", "step_pm3", "--set", "step_zero",
                         "--bound", "6")
        assert code == 0

    def test_sim_not_equivalent_finite(self, capsys):
        code, _, _ = run(capsys, "sim", fx("attractor.json"),
                         "--from", "core", "--set", "all")
        assert code == 0

    def test_admissible_found(self, capsys):
        code, out, _ = run(capsys, "admissible", fx("doubling.json"),
                           "--from", "unit", "--set", "open_half",
                           "--bound", "8", "--json")
        assert code == 0
        assert json.loads(out)["triple"] == ["0", "2", "2"]

    def test_admissible_undecided(self, capsys):
        code, _, _ = run(capsys, "admissible", fx("doubling.json"),
                         "--from", "origin", "--set", "unit", "--bound", "8")
        assert code == 3


class TestIndex:
    def test_finite_attractor(self, capsys):
        code, out, _ = run(capsys, "index", fx("attractor.json"),
                           "--set", "S", "--nbhd", "all", "--json")
        assert code == 0
        rep = json.loads(out)["report"]
        assert rep["ok"]
        assert rep["neighbourhoods"][0]["canonical_invariant"] == [2, [1, 1]]

    def test_doubling_with_search(self, capsys):
        code, out, _ = run(capsys, "index", fx("doubling.json"),
                           "--set", "S", "--nbhd", "unit",
                           "--search", "8", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["constructed"]["subset"] == \
            [[["-1/2", False, "1/2", False]]]
        assert payload["constructed"]["triple"] == ["0", "1", "1"]

    def test_clamp_flow_certified(self, capsys):
        code, out, _ = run(capsys, "index", fx("clamp_flow.json"),
                           "--set", "S", "--nbhd", "unit", "--json")
        assert code == 0
        assert json.loads(out)["report"]["ok"]

    def test_corner_flow_certified(self, capsys):
        code, out, _ = run(capsys, "index", fx("corner_flow.json"),
                           "--set", "S", "--nbhd", "square", "--json")
        assert code == 0
        assert json.loads(out)["report"]["ok"]


class TestSzymczakCommands:
    def test_szymczak_equal(self, capsys):
        code, _, _ = run(capsys, "szymczak-equal", fx("doubling.json"),
                         "--from", "open_half", "--set", "open_quarter",
                         "--bound", "8")
        assert code == 0

    def test_shift_equiv_finite(self, capsys):
        code, out, _ = run(capsys, "shift-equiv", fx("attractor.json"),
                           "--from", "core", "--set", "all", "--json")
        assert code == 0
        assert json.loads(out)["status"] == "yes"

    def test_shift_equiv_interval(self, capsys):
        code, _, _ = run(capsys, "shift-equiv", fx("doubling.json"),
                         "--from", "open_half", "--set", "open_quarter",
                         "--bound", "8")
        assert code == 0


class TestVerify:
    def test_named_suite(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "worked-models")
        assert code == 0

    def test_seeded_suite(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "finite-algebra",
                         "--trials", "50", "--seed", "7")
        assert code == 0

    def test_unknown_suite(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "unknown-name")
        assert code == 2


class TestExitCodes:
    def test_missing_document(self, capsys):
        code, _, err = run(capsys, "check", "no-such-file.json")
        assert code == 2

    def test_unknown_label(self, capsys):
        code, _, _ = run(capsys, "invariant-part", fx("attractor.json"),
                         "--set", "nope")
        assert code == 2

    def test_malformed_document(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"kind": "interval_map", "system": {
            "dimension": 1,
            "pieces": [{"domain": [[["0", True, "1", True]]],
                        "rules": [{"slope": "0.5", "intercept": "0"}]}],
        }}))
        code, _, _ = run(capsys, "check", str(bad))
        assert code == 2

    def test_default_bound_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CONLEY_DEFAULT_BOUND", "12")
        code, out, _ = run(capsys, "sim", fx("doubling.json"),
                           "--from", "origin", "--set", "unit", "--json")
        assert code == 3
        assert json.loads(out)["meta"]["bound"] == "12"
