"""Command-line surface: subcommands, formats, reproducibility."""

import json
import subprocess
import sys

import numpy as np
import pytest

from edkit.cli import main
from edkit.core import EditScript, apply_script, as_symbols, edit_distance


@pytest.fixture
def files(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("kitten")
    b.write_text("sitting")
    return tmp_path, a, b


def run_main(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


class TestDist:
    def test_exact(self, files, capsys):
        _, a, b = files
        code, out = run_main(["dist", str(a), str(b)], capsys)
        assert code == 0 and out.strip() == "3"

    def test_banded_exceeds(self, files, capsys):
        _, a, b = files
        code, out = run_main(["dist", str(a), str(b), "--banded", "1"], capsys)
        assert out.strip() == "EXCEEDS"
        code, out = run_main(["dist", str(a), str(b), "--banded", "5"], capsys)
        assert out.strip() == "3"

    def test_codes(self, tmp_path, capsys):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("1 2 3\n")
        b.write_text("1 9 3\n")
        _, out = run_main(["dist", str(a), str(b), "--codes"], capsys)
        assert out.strip() == "1"


class TestAlign:
    def test_script_applies(self, files, capsys):
        _, a, b = files
        code, out = run_main(["align", str(a), str(b), "--m", "2"], capsys)
        assert code == 0
        *script_lines, stats_line = out.strip().splitlines()
        stats = json.loads(stats_line)
        assert set(stats) == {"levels", "calls", "cost"}
        script = EditScript.from_jsonl("\n".join(script_lines))
        assert len(script) == stats["cost"]
        assert np.array_equal(apply_script("kitten", script), as_symbols("sitting"))

    def test_banded_estimator_flag(self, files, capsys):
        _, a, b = files
        code, out = run_main(["align", str(a), str(b), "--m", "2", "--estimator", "banded:2"], capsys)
        *script_lines, _ = out.strip().splitlines()
        script = EditScript.from_jsonl("\n".join(script_lines))
        assert np.array_equal(apply_script("kitten", script), as_symbols("sitting"))


class TestUlam:
    def test_embed_ham_decode(self, tmp_path, capsys):
        a = tmp_path / "x.txt"
        b = tmp_path / "y.txt"
        a.write_text("3 1 4 0 2\n")
        b.write_text("3 4 0 2 5\n")
        ea = tmp_path / "x.json"
        eb = tmp_path / "y.json"
        assert main(["ulam", "embed", str(a), "--codes", "--seed", "5", "--m", "12", "--out", str(ea)]) == 0
        assert main(["ulam", "embed", str(b), "--codes", "--seed", "5", "--m", "12", "--out", str(eb)]) == 0
        _, out = run_main(["ulam", "ham", str(ea), str(eb)], capsys)
        ham = int(out.strip())
        assert ham >= edit_distance([3, 1, 4, 0, 2], [3, 4, 0, 2, 5])
        _, out = run_main(["ulam", "decode", str(ea), str(eb)], capsys)
        script = EditScript.from_jsonl(out)
        assert len(script) == ham
        assert np.array_equal(apply_script([3, 1, 4, 0, 2], script), as_symbols([3, 4, 0, 2, 5]))


class TestPeriodicScan:
    def test_tsv(self, tmp_path, capsys):
        f = tmp_path / "w.txt"
        f.write_text("ab" * 8)
        _, out = run_main(["periodic", "scan", str(f), "--c", "2"], capsys)
        assert out.strip() == "1\t16\t2"


class TestDimred:
    def test_map_and_dist(self, tmp_path, capsys):
        x = tmp_path / "x.txt"
        y = tmp_path / "y.txt"
        rng = np.random.default_rng(0)
        sx = "".join(chr(97 + v) for v in rng.integers(0, 20, size=120))
        x.write_text(sx)
        y.write_text(sx[:50] + "q" + sx[50:])
        bx = tmp_path / "x.blocks"
        by = tmp_path / "y.blocks"
        assert main(["dimred", "map", str(x), "--c", "4", "--seed", "2", "--out", str(bx)]) == 0
        assert main(["dimred", "map", str(y), "--c", "4", "--seed", "2", "--out", str(by)]) == 0
        for line in bx.read_text().splitlines():
            off, length, digest = line.split("\t")
            assert int(length) <= 7 and len(digest) == 16
        _, out = run_main(["dimred", "dist", str(bx), str(bx)], capsys)
        assert out.strip() == "0"
        _, out = run_main(["dimred", "dist", str(bx), str(by)], capsys)
        assert int(out.strip()) >= 1

    def test_perm_flag(self, tmp_path, capsys):
        f = tmp_path / "p.txt"
        f.write_text(" ".join(str(v) for v in np.random.default_rng(1).permutation(30)))
        _, out = run_main(["dimred", "map", str(f), "--codes", "--c", "4"], capsys)
        lengths = [int(line.split("\t")[1]) for line in out.strip().splitlines()]
        assert sum(lengths) == 30


class TestLowregimeEmbed:
    def test_hex_output(self, tmp_path, capsys):
        f = tmp_path / "w.txt"
        f.write_text("".join(chr(97 + v) for v in np.random.default_rng(2).integers(0, 24, size=600)))
        _, out = run_main(
            ["lowregime", "embed", str(f), "--K", "1", "--D", "4", "--C", "1", "--seed", "3"], capsys
        )
        bits = out.strip()
        assert bits and all(c in "0123456789abcdef" for c in bits)


class TestGenAndBench:
    def test_gen_pair(self, tmp_path, capsys):
        code, out = run_main(
            ["gen", "--kind", "edited_pair", "--n", "30", "--alphabet", "4",
             "--edits", "2", "--seed", "9", "--out", str(tmp_path)], capsys
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 3

    def test_bench_writes_and_passes(self, tmp_path, capsys):
        code, out = run_main(
            ["bench", "--experiment", "dimred-length", "--trials", "6",
             "--seed", "1", "--out", str(tmp_path)], capsys
        )
        assert code == 0
        assert (tmp_path / "dimred-length.csv").exists()
        assert (tmp_path / "dimred-length.summary.json").exists()
        assert "PASS dimred-length:block_sizes_ok" in out

    def test_bench_csv_reproducible(self, tmp_path, capsys):
        for sub in ("r1", "r2"):
            assert main(["bench", "--experiment", "dimred-length", "--trials", "5",
                         "--seed", "4", "--out", str(tmp_path / sub)]) == 0
        capsys.readouterr()
        a = (tmp_path / "r1" / "dimred-length.csv").read_bytes()
        b = (tmp_path / "r2" / "dimred-length.csv").read_bytes()
        assert a == b

    def test_bench_json_format(self, tmp_path, capsys):
        assert main(["bench", "--experiment", "dimred-length", "--trials", "3",
                     "--seed", "2", "--format", "json", "--out", str(tmp_path)]) == 0
        capsys.readouterr()
        rows = json.loads((tmp_path / "dimred-length.json").read_text())
        assert len(rows) == 3

    def test_bench_nonzero_exit_on_failed_verdict(self, tmp_path, capsys, monkeypatch):
        from edkit import cli
        from edkit.experiments import ExperimentResult

        failing = ExperimentResult("alpha-sketch", ["pair", "seed", "oracle", "p_hat"], [],
                                   {"verdicts": {"lower_sandwich": False}})
        monkeypatch.setattr(cli, "run_experiment", lambda name, config: failing)
        code = main(["bench", "--experiment", "alpha-sketch", "--out", str(tmp_path)])
        out = capsys.readouterr().out
        assert code == 1
        assert "FAIL alpha-sketch:lower_sandwich" in out


class TestEntryPoint:
    def test_console_script(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("abc")
        b.write_text("abd")
        proc = subprocess.run(
            [sys.executable, "-m", "edkit.cli", "dist", str(a), str(b)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "1"


class TestLowregimePreserveTest:
    def test_writes_trial_csv(self, tmp_path, capsys):
        code = main(["lowregime", "preserve-test", "--K", "1", "--D", "4", "--C", "1",
                     "--trials", "3", "--seed", "2", "--out", str(tmp_path)])
        capsys.readouterr()
        assert code == 0
        csv_lines = (tmp_path / "lowregime-preserve.csv").read_text().splitlines()
        assert len(csv_lines) == 4  # header + 3 trials
        assert csv_lines[0] == "experiment,pair,seed,oracle,preserved"


class TestErrorHandling:
    def test_bad_input_exits_2(self, tmp_path, capsys):
        f = tmp_path / "p.txt"
        f.write_text("1 1 2\n")
        code = main(["dimred", "map", str(f), "--codes", "--c", "4", "--perm"])
        err = capsys.readouterr().err
        assert code == 2
        assert "ed: error:" in err

    def test_missing_file_exits_2(self, capsys):
        code = main(["dist", "/nonexistent/a", "/nonexistent/b"])
        assert code == 2
