"""End-to-end command line behaviour, artifacts and exit codes."""

from __future__ import annotations

import json

import pytest

from gshatter.cli import main
from gshatter.jsonio import (
    certificate_from_json,
    read_json,
    sha256_of_file,
    synth_result_from_json,
    write_json_atomic,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGroupCommand:
    def test_valid_group(self, capsys):
        code, out, _ = run(capsys, "group", "--spec", "cyclic:5")
        assert code == 0
        data = json.loads(out)
        assert data["order"] == 5
        assert data["abelian"] is True
        assert data["validation"]["exhaustive"] is True

    def test_nonabelian_flag(self, capsys):
        code, out, _ = run(capsys, "group", "--spec", "dihedral:3")
        assert code == 0
        data = json.loads(out)
        assert data["abelian"] is False
        assert data["order_two_element"] is not None

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, _, _ = run(capsys, "group", "--spec", "cyclic:6", "--out", str(target))
        assert code == 0
        assert read_json(target)["order"] == 6

    def test_bad_spec(self, capsys):
        code, _, err = run(capsys, "group", "--spec", "cyclic:x")
        assert code == 2
        assert "error" in err


class TestOrdersCommand:
    def test_m4(self, capsys, tmp_path):
        code, out, _ = run(capsys, "orders", "--m", "4", "--out-dir", str(tmp_path))
        assert code == 0
        assert "complete=True" in out
        order_set = read_json(tmp_path / "order_set_m4.json")
        assert order_set["m"] == 4
        assert len(order_set["rankings"]) == 6
        report = read_json(tmp_path / "completeness_report_m4.json")
        assert report["complete"] and report["minimal"]
        manifest = read_json(tmp_path / "run_manifest.json")
        assert manifest["command"] == "orders"
        assert "order_set_m4.json" in manifest["outputs"]

    @pytest.mark.parametrize("m", ["0", "33"])
    def test_m_out_of_range(self, capsys, m, tmp_path):
        code, _, err = run(capsys, "orders", "--m", m, "--out-dir", str(tmp_path))
        assert code == 2
        assert "error" in err


class TestSynthCommand:
    def test_small_pipeline(self, capsys, tmp_path):
        code, out, _ = run(
            capsys,
            "synth", "--group", "cyclic:8", "--m", "2",
            "--out-dir", str(tmp_path),
        )
        assert code == 0
        assert "shattered: True (4/4 dichotomies witnessed)" in out
        for name in (
            "synth_result.json",
            "kernel.json",
            "functions.json",
            "orders.json",
            "verify_report.json",
            "shatter_certificate.json",
            "run_manifest.json",
        ):
            assert (tmp_path / name).exists(), name
        assert read_json(tmp_path / "verify_report.json")["passed"] is True
        cert = certificate_from_json(read_json(tmp_path / "shatter_certificate.json"))
        assert cert.shattered and cert.m == 2
        result = synth_result_from_json(read_json(tmp_path / "synth_result.json"))
        assert result.group.label == "cyclic:8"

    def test_reruns_are_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for d in (a, b):
            code, _, _ = run(
                capsys,
                "synth", "--group", "cyclic:8", "--m", "2", "--out-dir", str(d),
            )
            assert code == 0
        for name in ("synth_result.json", "kernel.json", "shatter_certificate.json"):
            assert sha256_of_file(a / name) == sha256_of_file(b / name), name

    def test_bad_group_spec(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "synth", "--group", "tetra:3", "--m", "2",
            "--out-dir", str(tmp_path),
        )
        assert code == 2

    def test_group_too_small(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "synth", "--group", "cyclic:10", "--m", "4",
            "--out-dir", str(tmp_path),
        )
        assert code == 3
        assert "48" in err

    def test_missing_mode_element(self, capsys, tmp_path):
        # cyclic:81 has no involution, so order_two mode cannot start.
        code, _, err = run(
            capsys, "synth", "--group", "cyclic:81", "--m", "3",
            "--out-dir", str(tmp_path),
        )
        assert code == 4

    def test_m_cap_without_allow_large(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "synth", "--group", "cyclic:4000", "--m", "9",
            "--out-dir", str(tmp_path),
        )
        assert code == 2
        assert "allow-large" in err

    def test_bad_interval(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "synth", "--group", "cyclic:8", "--m", "2",
            "--b", "3", "--c", "2", "--out-dir", str(tmp_path),
        )
        assert code == 2


class TestVerifyCommand:
    @pytest.fixture()
    def bundle(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "synth", "--group", "cyclic:8", "--m", "2",
            "--out-dir", str(tmp_path),
        )
        assert code == 0
        return tmp_path

    def test_agrees_on_synth_bundle(self, capsys, bundle):
        code, out, _ = run(
            capsys,
            "verify",
            "--kernel", str(bundle / "kernel.json"),
            "--functions", str(bundle / "functions.json"),
        )
        assert code == 0
        assert "shattered=True order_criterion=True agreement=True" in out

    def test_out_file(self, capsys, bundle, tmp_path):
        target = tmp_path / "verdict" / "verdict.json"
        code, _, _ = run(
            capsys,
            "verify",
            "--kernel", str(bundle / "kernel.json"),
            "--functions", str(bundle / "functions.json"),
            "--out", str(target),
        )
        assert code == 0
        verdict = read_json(target)
        assert verdict["agreement"] is True
        assert verdict["certificate"]["shattered"] is True
        manifest = read_json(target.parent / "run_manifest.json")
        assert manifest["command"] == "verify"
        assert len(manifest["inputs"]) == 2

    def test_zero_kernel_agreeing_negative(self, capsys, bundle, tmp_path):
        kernel = read_json(bundle / "kernel.json")
        kernel["values"] = ["0"] * len(kernel["values"])
        zeroed = tmp_path / "zero_kernel.json"
        write_json_atomic(zeroed, kernel)
        code, out, _ = run(
            capsys,
            "verify",
            "--kernel", str(zeroed),
            "--functions", str(bundle / "functions.json"),
        )
        assert code == 0
        assert "shattered=False order_criterion=False agreement=True" in out

    def test_truncated_json(self, capsys, bundle, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text((bundle / "kernel.json").read_text()[:25])
        code, _, err = run(
            capsys,
            "verify",
            "--kernel", str(broken),
            "--functions", str(bundle / "functions.json"),
        )
        assert code == 2
        assert "cannot read inputs" in err

    def test_mismatched_groups(self, capsys, bundle, tmp_path):
        functions = read_json(bundle / "functions.json")
        functions["group"] = "cyclic:9"
        other = tmp_path / "other_functions.json"
        write_json_atomic(other, functions)
        code, _, err = run(
            capsys,
            "verify",
            "--kernel", str(bundle / "kernel.json"),
            "--functions", str(other),
        )
        assert code == 2
        assert "different groups" in err


class TestBoundsCommand:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "16,48")
        assert code == 0
        lines = [l for l in out.splitlines() if l.strip()]
        assert len(lines) == 3  # header + two rows
        assert lines[0].split()[0] == "n"
        row16 = lines[1].split()
        assert row16[0] == "16"
        assert row16[1] == "16"  # implicit upper bound at n = 16

    def test_empty_n_prints_header_only(self, capsys):
        code, out, _ = run(capsys, "bounds")
        assert code == 0
        lines = [l for l in out.splitlines() if l.strip()]
        assert len(lines) == 1

    def test_bad_n(self, capsys):
        code, _, _ = run(capsys, "bounds", "--n", "16,abc")
        assert code == 2
        code, _, _ = run(capsys, "bounds", "--n", "0")
        assert code == 2

    def test_csv_and_json_outputs(self, capsys, tmp_path):
        csv_path = tmp_path / "bounds.csv"
        json_path = tmp_path / "bounds.json"
        code, _, _ = run(
            capsys, "bounds", "--n", "16,256",
            "--csv", str(csv_path), "--json", str(json_path),
        )
        assert code == 0
        assert csv_path.read_text().splitlines()[0].startswith("n,")
        rows = read_json(json_path)
        assert [r["n"] for r in rows] == [16, 256]
        assert rows[1]["refined_upper"] == pytest.approx(35.0)

    def test_achieved_column(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "synth", "--group", "cyclic:8", "--m", "2",
            "--out-dir", str(tmp_path),
        )
        assert code == 0
        code, out, _ = run(
            capsys, "bounds", "--n", "8,16",
            "--achieved", str(tmp_path / "shatter_certificate.json"),
        )
        assert code == 0
        row8 = next(l for l in out.splitlines() if l.strip().startswith("8"))
        assert row8.split()[-1] == "2"


class TestParser:
    def test_no_command_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
