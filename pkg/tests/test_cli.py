import json
import math

import pytest

from spingame.cli import main


def read_report(path):
    with open(path) as fh:
        return json.load(fh)


class TestVerifyMode:
    def test_writes_report_and_exits_zero(self, tmp_path, capsys):
        code = main(["--mode", "verify-theorem1", "--rounds", "20",
                     "--seed", "3", "--out", str(tmp_path)])
        assert code == 0
        report = read_report(tmp_path / "report.json")
        assert report["results"]["passed"] is True
        out = capsys.readouterr().out
        assert "max correlation deviation" in out


class TestGameMode:
    def test_writes_transcript(self, tmp_path):
        code = main(["--mode", "run-game", "--rounds", "500", "--seed", "9",
                     "--out", str(tmp_path)])
        assert code == 0
        report = read_report(tmp_path / "report.json")
        assert report["mode"] == "run-game"
        csv_text = (tmp_path / "transcript.csv").read_text()
        assert csv_text.splitlines()[0].startswith("round,pair_index")
        assert len(csv_text.splitlines()) == 501

    def test_unknown_strategy_exits_two(self, tmp_path, capsys):
        code = main(["--mode", "run-game", "--strategy-a", "wizard",
                     "--out", str(tmp_path)])
        assert code == 2
        assert "wizard" in capsys.readouterr().err

    def test_zero_support_exits_two(self, tmp_path, capsys):
        code = main(["--mode", "run-game", "--basis", "computational",
                     "--out", str(tmp_path)])
        assert code == 2
        assert "Born probability" in capsys.readouterr().err


class TestConfigFile:
    def test_file_fields_used(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"rounds": 300, "seed": 12,
                                      "strategy_a": "sign", "strategy_b": "sign"}))
        code = main(["--mode", "run-game", "--config", str(config),
                     "--out", str(tmp_path)])
        assert code == 0
        report = read_report(tmp_path / "report.json")
        assert report["config"]["rounds"] == 300
        assert report["config"]["strategy_a"] == "sign"

    def test_flags_override_file(self, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"rounds": 300, "seed": 12}))
        code = main(["--mode", "run-game", "--config", str(config),
                     "--rounds", "150", "--out", str(tmp_path)])
        assert code == 0
        assert read_report(tmp_path / "report.json")["config"]["rounds"] == 150

    def test_json_error_is_line_anchored(self, tmp_path, capsys):
        config = tmp_path / "broken.json"
        config.write_text('{\n  "rounds": 10,\n  oops\n}')
        with pytest.raises(SystemExit) as err:
            main(["--mode", "run-game", "--config", str(config),
                  "--out", str(tmp_path)])
        assert ":3:" in str(err.value)


class TestDeterminism:
    def test_same_seed_byte_identical_outside_metadata(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        args = ["--mode", "run-game", "--rounds", "400", "--seed", "77"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        r1 = read_report(out1 / "report.json")
        r2 = read_report(out2 / "report.json")
        assert r1["config_digest"] == r2["config_digest"]
        r1["metadata"].pop("generated_at")
        r2["metadata"].pop("generated_at")
        assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)
        assert (out1 / "transcript.csv").read_bytes() == (out2 / "transcript.csv").read_bytes()

    def test_lhv_report_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert main(["--mode", "lhv-search", "--out", str(out)]) == 0
        r1, r2 = read_report(out1 / "report.json"), read_report(out2 / "report.json")
        r1["metadata"].pop("generated_at")
        r2["metadata"].pop("generated_at")
        assert r1 == r2


class TestCvalTableMode:
    def test_eight_rows(self, tmp_path, capsys):
        theta = math.pi / 3
        code = main(["--mode", "cval-table", "--angles", str(theta),
                     "--out", str(tmp_path)])
        assert code == 0
        rows = read_report(tmp_path / "report.json")["results"]["rows"]
        assert len(rows) == 8
        assert "8 table rows" in capsys.readouterr().out


class TestChshGameMode:
    def test_quantum_run(self, tmp_path, capsys):
        code = main(["--mode", "chsh-game", "--rounds", "5000", "--seed", "2",
                     "--out", str(tmp_path)])
        assert code == 0
        report = read_report(tmp_path / "report.json")
        assert report["results"]["game"]["rounds"] == 5000
        assert "win frequency" in capsys.readouterr().out
