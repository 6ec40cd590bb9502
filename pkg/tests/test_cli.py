import csv
import io
import json
import subprocess
import sys

import pytest

from nesieve import bounds, cli
from nesieve.sieve import ELIMINATED, sieve_range


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSieveCommand:
    def test_degree29_survivors(self, capsys):
        code, out, err = run_cli(capsys, "sieve", "--ell", "29", "--from", "2",
                                 "--to", "10000")
        assert code == 0
        assert [int(x) for x in out.split()] == [59, 233, 523, 841, 929, 2843, 3191]
        assert "survivors=7" in err

    def test_witness_lines_near_1e10(self, capsys):
        code, out, _ = run_cli(capsys, "sieve", "--ell", "3",
                               "--from", "9999999600", "--to", "10000000000",
                               "--engine", "cubic", "--emit-witnesses")
        assert code == 0
        lines = [ln for ln in out.splitlines() if ln.startswith("f=")]
        assert lines[-3:] == [
            "f=9999999817, q1=2, q2=3, r=13",
            "f=9999999943, q1=5, q2=7, r=19",
            "f=9999999967, q1=5, q2=7, r=11",
        ]

    def test_format_equivalence(self, capsys):
        args = ["sieve", "--ell", "3", "--from", "2", "--to", "500"]
        _, text_out, _ = run_cli(capsys, *args, "--emit-witnesses")
        _, csv_out, _ = run_cli(capsys, *args, "--format", "csv")
        _, json_out, _ = run_cli(capsys, *args, "--format", "json")

        csv_rows = list(csv.DictReader(io.StringIO(csv_out)))
        json_rows = [json.loads(ln) for ln in json_out.splitlines()]
        assert len(csv_rows) == len(json_rows)
        for c, j in zip(csv_rows, json_rows):
            assert {k: int(v) for k, v in c.items() if k != "verdict"} == {
                k: v for k, v in j.items() if k != "verdict"
            }
            assert c["verdict"] == j["verdict"]

        text_witnesses = [ln for ln in text_out.splitlines() if ln.startswith("f=")]
        json_witnesses = [
            f"f={r['f']}, q1={r['q1']}, q2={r['q2']}, r={r['r']}"
            for r in json_rows
            if r["verdict"] == ELIMINATED
        ]
        assert text_witnesses == json_witnesses
        text_survivors = [int(ln) for ln in text_out.splitlines() if not ln.startswith("f=")]
        json_survivors = [r["f"] for r in json_rows if r["verdict"] != ELIMINATED]
        assert text_survivors == json_survivors

    def test_checkpoint_roundtrip(self, capsys, tmp_path):
        ckpt = str(tmp_path / "cli.ckpt")
        code, out1, _ = run_cli(capsys, "sieve", "--ell", "3", "--to", "2000",
                                "--checkpoint", ckpt)
        assert code == 0
        # resuming a completed run rescans nothing but reports the survivors
        code, _, err = run_cli(capsys, "sieve", "--ell", "3", "--to", "2000",
                               "--checkpoint", ckpt)
        assert code == 0
        assert "conductors=0" in err

    def test_usage_errors(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["sieve", "--ell", "3"])  # missing --to
        assert exc.value.code == 1
        capsys.readouterr()

    def test_cubic_wrong_degree(self, capsys):
        code, _, err = run_cli(capsys, "sieve", "--ell", "5", "--to", "100",
                               "--engine", "cubic")
        assert code == 1
        assert "cubic" in err

    def test_width_limit_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "sieve", "--ell", "3", "--to",
                               str(1 << 63))
        assert code == 3

    def test_table_engine_cap_exit_code(self, capsys, monkeypatch):
        monkeypatch.setenv("NESIEVE_TABLE_LIMIT", "50")
        code, _, err = run_cli(capsys, "sieve", "--ell", "3", "--to", "1000",
                               "--engine", "table")
        assert code == 3
        assert "cap" in err


class TestConstantsCommand:
    def test_burgess_table(self, capsys):
        code, out, _ = run_cli(capsys, "constants", "--table", "c-burgess")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 15  # header + 14 rows
        assert lines[1].split() == ["2", "10.0366"]
        assert lines[-1].split() == ["15", "1.7700"]

    def test_d1_csv(self, capsys):
        code, out, _ = run_cli(capsys, "constants", "--table", "d1",
                               "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["k", "D1(k)"]
        assert rows[1] == ["2", "89.1550"]

    def test_cl_table(self, capsys):
        code, out, _ = run_cli(capsys, "constants", "--table", "c-ell")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 25  # header + 24 degrees
        assert "10^70" in lines[1]

    def test_unknown_selector(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["constants", "--table", "nope"])
        assert exc.value.code == 1
        capsys.readouterr()


class TestVerifyCommand:
    def test_published_block_passes(self, capsys, tmp_path):
        report = sieve_range(3, 9999999600, 10**10, engine="cubic",
                             want_witnesses=True)
        path = tmp_path / "block.txt"
        path.write_text("".join(w.text_line() + "\n" for w in report.witnesses))
        code, out, _ = run_cli(capsys, "verify", "--ell", "3", str(path))
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == len(report.witnesses)
        assert all(ln.startswith("PASS") for ln in lines)

    def test_tampered_line_fails(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("f=9999999673, q1=5, q2=7, r=19\n")
        code, out, _ = run_cli(capsys, "verify", "--ell", "3", str(path))
        assert code == 2
        assert out.startswith("FAIL")

    def test_malformed_line(self, capsys, tmp_path):
        path = tmp_path / "junk.txt"
        path.write_text("f=9999999673, q1=5, q2=7, r=17\nwat\n")
        code, _, err = run_cli(capsys, "verify", str(path))
        assert code == 1
        assert ":2:" in err

    def test_empty_file(self, capsys, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("")
        code, out, _ = run_cli(capsys, "verify", str(path))
        assert code == 0
        assert out == ""

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "verify", "/does/not/exist")
        assert code == 1


class TestSelfcheckCommand:
    def test_quick_passes(self, capsys):
        code, out, _ = run_cli(capsys, "selfcheck", "--quick")
        assert code == 0
        assert "ok   table c-burgess" in out

    def test_fault_injection_names_the_row(self, capsys, monkeypatch):
        from decimal import Decimal
        from nesieve import selfcheck as sc

        real = bounds.burgess_C

        def perturbed(r, d=11.0, p0=2.0e4):
            if r == 2:
                return Decimal("10.0367")
            return real(r, d, p0)

        monkeypatch.setattr(bounds, "burgess_C", perturbed)
        code, out, _ = run_cli(capsys, "selfcheck", "--quick")
        assert code == 2
        assert "table c-burgess row r=2" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nesieve", "constants", "--table", "e"],
        capture_output=True,
        text=True,
        cwd=str(__import__("pathlib").Path(__file__).resolve().parent.parent / "src"),
    )
    assert proc.returncode == 0
    assert "3493.6" in proc.stdout
