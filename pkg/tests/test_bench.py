import csv
import subprocess
import sys

import pytest

from frame_erasure import Frame, MrcUnattainable, write_frame
from frame_erasure.bench import (
    CSV_HEADER,
    ERROR_COLUMNS,
    TIMING_COLUMNS,
    BenchConfig,
    BenchRecord,
    emit_csv,
    run_fixed_demo,
    run_random_bench,
    summarize,
)
from frame_erasure.cli import main

HEADER = (
    "test,N,r,k,seed,t1,t2,t3,t4_z1,t5_z1,t4_z2,t5_z2,"
    "e1,e2,e3,e4_z1,e5_z1,e4_z2,e5_z2,stmtA,stmtAp,stmtB,stmtC,stmtD"
)


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# --------------------------------------------------------------- config


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(dim=5, count=10, erasures=0),
        dict(dim=5, count=10, erasures=10),
        dict(dim=5, count=10, erasures=2, trials=0),
        dict(dim=0, count=10, erasures=2),
        dict(dim=5, count=10, erasures=2, tol=0.0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        BenchConfig(**kwargs)


# ------------------------------------------------------------------- CSV


def test_header_is_fixed():
    assert ",".join(CSV_HEADER) == HEADER


def test_emit_empty_and_single(tmp_path):
    path = tmp_path / "empty.csv"
    emit_csv([], path)
    assert path.read_text() == HEADER + "\n"
    rec = BenchRecord("t", 3, 2, 1, 0, t1=0.5, e1=1e-15, stmtA=True)
    emit_csv([rec], path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    row = dict(zip(CSV_HEADER, lines[1].split(",")))
    assert row["t1"] == "0.500000" and row["e1"] == "1.000000e-15"
    assert row["stmtA"] == "true" and row["t2"] == "NA" and row["stmtB"] == "NA"


def test_record_helpers():
    rec = BenchRecord("t", 3, 2, 1, 0, t1=0.3, t2=0.1, e1=1e-9, e2=1e-7)
    assert rec.fastest() == "t2"
    assert rec.within(1e-6) and not rec.within(1e-8)
    assert BenchRecord("t", 3, 2, 1, 0).fastest() is None
    assert summarize([rec, BenchRecord("u", 3, 2, 1, 0, t1=0.5)]) == {"t1": 0.4, "t2": 0.1}


# ----------------------------------------------------------------- bench


def test_random_bench_desk_run():
    cfg = BenchConfig(dim=400, count=600, erasures=50, seed=1, trials=3)
    records = run_random_bench(cfg)
    assert len(records) == 3
    for rec in records:
        assert rec.within(1e-8)
        assert set(rec.timings()) == set(TIMING_COLUMNS)
        assert all(t >= 0 for t in rec.timings().values())
        assert rec.stmtA and rec.stmtD


def test_random_bench_deterministic():
    cfg = BenchConfig(dim=20, count=30, erasures=4, seed=5, trials=2)
    a, b = run_random_bench(cfg), run_random_bench(cfg)
    for ra, rb in zip(a, b):
        assert ra.errors() == rb.errors()


def test_random_bench_mrc_unattainable():
    with pytest.raises(MrcUnattainable):
        run_random_bench(BenchConfig(dim=5, count=8, erasures=4))


def test_random_bench_given_frame_shape_check(rng):
    cfg = BenchConfig(dim=3, count=6, erasures=1)
    with pytest.raises(ValueError):
        run_random_bench(cfg, Frame(rng.standard_normal((3, 7))))


# ------------------------------------------------------------------ demos


def test_demo_examples_pass():
    for name in ("example31", "example34"):
        report = run_fixed_demo(name)
        assert report.passed, str(report)
    text = str(run_fixed_demo("example34"))
    assert "stop at j=1" in text


def test_demo_stop_at_three_small(tmp_path):
    report = run_fixed_demo("test9", dim=40)
    assert report.passed, str(report)
    rec = report.records[0]
    assert rec.stop_z1 == 3 and rec.stmtA and not rec.stmtAp
    path = tmp_path / "t9.csv"
    emit_csv(report.records, path)
    row = read_rows(path)[0]
    for col in ("t4_z1", "t5_z1", "e4_z1", "e5_z1"):
        assert row[col] == "NA"
    for col in ("e4_z2", "e5_z2"):
        assert float(row[col]) <= 1e-10


def test_demo_unknown():
    with pytest.raises(ValueError):
        run_fixed_demo("nope")


# -------------------------------------------------------------------- CLI


def test_cli_bench_writes_csv(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code = main(["bench", "--dim", "30", "--count", "45", "--erasures", "5", "--trials", "2", "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert text.count("fastest:") == 2 and "median:" in text
    rows = read_rows(out)
    assert len(rows) == 2
    for row in rows:
        assert all(float(row[c]) >= 0 for c in TIMING_COLUMNS)
        assert all(float(row[c]) <= 1e-8 for c in ERROR_COLUMNS)


def test_cli_bench_from_frame_file(tmp_path, rng, capsys):
    path = tmp_path / "f.frm"
    write_frame(Frame(rng.standard_normal((6, 12))), path)
    assert main(["bench", "--frame-file", str(path), "--erasures", "3"]) == 0
    assert "trial0" in capsys.readouterr().out


def test_cli_errors(capsys):
    assert main(["bench", "--dim", "5", "--count", "10", "--erasures", "0"]) == 2
    assert "error:" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["bench", "--erasures", "2"])
    with pytest.raises(SystemExit):
        main(["demo", "nope"])


def test_cli_demo_and_verify(capsys):
    assert main(["demo", "example31"]) == 0
    assert "[PASS]" in capsys.readouterr().out
    assert main(["verify", "--instances", "10"]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out and out.count("[PASS]") == 5


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "frame_erasure", "demo", "example34"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0, proc.stderr
    assert "D=F" in proc.stdout
