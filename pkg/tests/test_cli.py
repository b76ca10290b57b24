import hashlib
import json

import pytest

from gssamp.cli import PRESETS, list_presets, main, run_experiment, validate_config


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestListAndValidate:
    def test_list_presets(self, capsys):
        code, out, _ = run_cli(["list-presets"], capsys)
        assert code == 0
        names = out.split()
        assert set(names) == set(PRESETS)
        assert names == sorted(names)

    def test_validate_preset_ok(self, capsys):
        code, out, _ = run_cli(["validate", "path-downsample"], capsys)
        assert code == 0
        assert out.strip() == "ok"

    def test_validate_unknown_preset(self, capsys):
        code, _, err = run_cli(["validate", "no-such-preset"], capsys)
        assert code == 1
        assert "config error" in err

    def test_validate_bad_config_file(self, tmp_path, capsys):
        bad = dict(PRESETS["path-downsample"]())
        bad["signal"] = {"kind": "nonsense"}
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(bad))
        code, _, err = run_cli(["validate", str(p)], capsys)
        assert code == 1
        assert "config error" in err

    def test_validate_malformed_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code, _, err = run_cli(["validate", str(p)], capsys)
        assert code == 1

    def test_validate_collects_errors(self):
        errors = validate_config({"kind": "nonsense"})
        assert errors

    def test_every_preset_validates(self):
        for name in list_presets():
            cfg = PRESETS[name]()
            if name == "minnesota-energy":
                continue  # needs an external edge list
            assert validate_config(cfg) == [], name


class TestRun:
    def test_run_writes_manifest_and_files(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        code, out, _ = run_cli(["run", "path-downsample", "--out", str(out_dir)], capsys)
        assert code == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["files"]
        for name, digest in manifest["files"].items():
            path = out_dir / name
            assert path.exists()
            assert hashlib.sha256(path.read_bytes()).hexdigest() == digest

    def test_run_config_file(self, tmp_path, capsys):
        cfg = PRESETS["path-downsample"]()
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(cfg))
        out_dir = tmp_path / "out"
        code, _, _ = run_cli(["run", str(p), "--out", str(out_dir)], capsys)
        assert code == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["config"]["kind"] == cfg["kind"]

    def test_run_deterministic(self, tmp_path):
        m1 = run_experiment(PRESETS["path-downsample"](), tmp_path / "a")
        m2 = run_experiment(PRESETS["path-downsample"](), tmp_path / "b")
        assert m1["files"] == m2["files"]
        assert m1["scalars"] == m2["scalars"]
        for name in m1["files"]:
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_missing_dataset_fails_cleanly(self, tmp_path, capsys):
        code, _, err = run_cli(
            ["run", "minnesota-energy", "--out", str(tmp_path / "out")], capsys
        )
        assert code == 1
        assert "config error" in err

    def test_csv_headers(self, tmp_path):
        run_experiment(PRESETS["path-downsample"](), tmp_path)
        for csv in tmp_path.glob("*.csv"):
            first = csv.read_text().splitlines()[0]
            assert first.startswith("# ")

    @pytest.mark.parametrize(
        "preset",
        ["repeated-eigenvalues", "community-fractional", "aliasing-path"],
    )
    def test_other_presets_run(self, preset, tmp_path, capsys):
        code, _, _ = run_cli(["run", preset, "--out", str(tmp_path / preset)], capsys)
        assert code == 0

    def test_repeated_eigenvalue_scalars(self, tmp_path):
        m = run_experiment(PRESETS["repeated-eigenvalues"](), tmp_path)
        s = m["scalars"]
        assert s["ordered_fold_energy"] < 1e-12
        assert s["permuted_fold_energy"] > 0.25 * s["permuted_total_energy"]
