import json

import pytest

from minadd import cli

PAPERLIKE = "period = 5\nresidues = 2,3\nthreshold = 10\nextras = 2,4,7,8,9\n"
EVEN = "m = 2\nx = 0\ny1 = 1\n"
QUASI = "m = 3\nx = 0\ny0 = -3\n"


@pytest.fixture
def setfile(tmp_path):
    def write(text, name="input.set"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run_json(capsys, argv):
    code = cli.main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestParse:
    def test_raw_fields(self):
        fields = cli.parse_set_file(PAPERLIKE)
        assert fields["period"] == 5
        assert fields["extras"] == [2, 4, 7, 8, 9]

    def test_comments_and_blanks(self):
        fields = cli.parse_set_file("# header\n\nm = 2\nx = 0  # pattern\n")
        assert fields == {"m": 2, "x": [0]}

    def test_bad_line_rejected(self):
        with pytest.raises(cli.ParseError):
            cli.parse_set_file("m: 2\n")

    def test_unknown_field_rejected(self):
        with pytest.raises(cli.ParseError):
            cli.parse_set_file("modulus = 2\n")

    def test_mixed_forms_rejected(self):
        with pytest.raises(cli.ParseError):
            cli.parse_set_file("m = 2\nperiod = 2\n")


class TestCanonicalize:
    def test_running_example(self, setfile, capsys):
        code, rec = run_json(capsys, ["canonicalize", setfile(PAPERLIKE)])
        assert code == 0
        canon = rec["result"]["canonical"]
        assert canon["m"] == 5 and canon["x"] == [2, 3]
        assert canon["shift"] == 10

    def test_empty_set_exit_code(self, setfile, capsys):
        path = setfile("period = 2\nresidues =\nthreshold = 0\n")
        assert cli.main(["canonicalize", path]) == cli.EXIT_BAD_INPUT

    def test_above_bounded_flagged(self, setfile, capsys):
        path = setfile(
            "period = 5\nresidues = 0\nthreshold = 0\nextras = -3\n"
            "orientation = above\n"
        )
        code, rec = run_json(capsys, ["canonicalize", path])
        assert code == 0
        assert rec["result"]["reflected"] is True


class TestDecide:
    def test_not_exists(self, setfile, capsys):
        code, rec = run_json(capsys, ["decide", setfile(PAPERLIKE)])
        assert code == cli.EXIT_NOT_EXISTS
        verdict = rec["result"]["verdict"]
        assert verdict["reason"] == "necessary-condition-failed"
        assert verdict["modulus"] == 5

    def test_exists(self, setfile, capsys):
        code, rec = run_json(capsys, ["decide", setfile(EVEN)])
        assert code == cli.EXIT_EXISTS
        assert rec["result"]["verdict"]["certificate"] == {
            "T": 2,
            "c": [0],
            "variant": "sufficient",
        }

    def test_quasiperiodic(self, setfile, capsys):
        code, rec = run_json(capsys, ["decide", setfile(QUASI)])
        assert code == cli.EXIT_NOT_EXISTS
        assert rec["result"]["verdict"]["reason"] == "quasiperiodic"

    def test_unknown(self, setfile, capsys):
        code, rec = run_json(capsys, ["decide", setfile(PAPERLIKE), "--t-max", "0"])
        assert code == cli.EXIT_UNKNOWN

    def test_missing_file(self, capsys):
        assert cli.main(["decide", "/nonexistent.set"]) == cli.EXIT_BAD_INPUT

    def test_deterministic_payload(self, setfile, capsys):
        path = setfile(EVEN)
        _, rec1 = run_json(capsys, ["decide", path])
        _, rec2 = run_json(capsys, ["decide", path])
        for rec in (rec1, rec2):
            del rec["timing"]
            del rec["result"]["verdict"]["stats"]["wall_time"]
        assert rec1 == rec2


class TestWitness:
    def test_build_and_verify(self, setfile, tmp_path, capsys):
        code, rec = run_json(
            capsys, ["witness", setfile(EVEN), "--window=-40:40"]
        )
        assert code == 0
        assert rec["result"]["coverage"]["ok"]
        assert rec["result"]["minimality"]["ok"]
        record_path = tmp_path / "witness.json"
        record_path.write_text(json.dumps(rec))
        assert cli.main(["verify-witness", str(record_path)]) == 0

    def test_corrupted_record_fails(self, setfile, tmp_path, capsys):
        _, rec = run_json(capsys, ["witness", setfile(EVEN), "--window=-40:40"])
        witness = rec["result"]["witness"]
        victim = witness["d_elements"][len(witness["d_elements"]) // 2]
        witness["d_elements"].remove(victim)
        witness["provenance"].pop(str(victim))
        record_path = tmp_path / "corrupt.json"
        record_path.write_text(json.dumps(rec))
        assert cli.main(["verify-witness", str(record_path)]) == cli.EXIT_VERIFY_FAILED

    def test_no_certificate(self, setfile, capsys):
        code = cli.main(["witness", setfile(QUASI), "--window=-40:40"])
        assert code == cli.EXIT_NOT_EXISTS


class TestConstruct:
    def test_two_steps(self, capsys):
        code, rec = run_json(
            capsys, ["construct", "--steps", "2", "--slack", "const:1"]
        )
        assert code == 0
        state = rec["result"]["state"]
        assert state["d_seq"] == [-1, -3]
        assert state["c_seq"] == [-3, -14]

    def test_report_passes(self, capsys):
        code, rec = run_json(capsys, ["construct", "--steps", "8"])
        assert code == 0
        report = rec["result"]["report"]
        assert report["gaps_ok"] and report["coverage_ok"]
        assert report["uniqueness_failures"] == []

    def test_cycle_slack(self, capsys):
        code, rec = run_json(
            capsys,
            ["construct", "--steps", "6", "--slack", "cycle:1,2,3"],
        )
        assert code == 0
        assert len(rec["result"]["state"]["slack_seq"]) == 5

    def test_bad_slack(self, capsys):
        assert (
            cli.main(["construct", "--steps", "3", "--slack", "weird:x"])
            == cli.EXIT_BAD_INPUT
        )
