import json
from pathlib import Path

from winpibt import maps
from winpibt.bench_io import read_result
from winpibt.cli import main, parse_seeds

DATA = Path(__file__).parent / "data"


def _small_map(tmp_path):
    p = tmp_path / "m.map"
    p.write_text("type octile\nheight 4\nwidth 4\nmap\n....\n....\n....\n....\n")
    return p


def test_solve_json(tmp_path, capsys):
    code = main(["solve", "--map", str(_small_map(tmp_path)), "--agents", "2", "--solver", "winpibt", "--window", "3", "--seed", "1"])
    out = capsys.readouterr()
    assert code == 0
    rec = json.loads(out.out)
    assert rec["solver"] == "winpibt" and rec["success"] and rec["runtime"] is None
    assert "ok" in out.err


def test_golden_fig3(capsys):
    assert main(["solve", "--golden", "fig3", "--paths"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert tuple(map(tuple, rec["paths"])) == maps.FIG3_EXPECTED


def test_byte_identical_output(tmp_path, capsys):
    argv = ["solve", "--grid", "6x6", "--agents", "8", "--window", "4", "--seed", "5", "--paths"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_timing_flag(capsys):
    main(["solve", "--golden", "fig3", "--timing"])
    assert json.loads(capsys.readouterr().out)["runtime"] >= 0


def test_batch_25_rows_in_seed_order(tmp_path):
    out = tmp_path / "b.csv"
    code = main(["batch", "--map", str(_small_map(tmp_path)), "--agents", "3", "--solver", "pibt", "--seeds", "1..25", "--jobs", "3", "-o", str(out)])
    rows = read_result(out.read_bytes(), "csv")
    assert [r.seed for r in rows] == list(range(1, 26))
    # exit 1 flags any cutoff run (one-step PIBT can livelock)
    assert code == (0 if all(r.success for r in rows) else 1)


def test_batch_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ["batch", "--grid", "5x5", "--agents", "6", "--solver", "winpibt", "--window", "3", "--seeds", "1..6"]
    main(base + ["-o", str(a)])
    main(base + ["--jobs", "3", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("WINPIBT_OUTPUT_DIR", str(tmp_path / "out"))
    assert main(["solve", "--golden", "fig3", "--seed", "2"]) == 0
    assert (tmp_path / "out" / "solve-winpibt-2.jsonl").exists()
    assert "ok" in capsys.readouterr().out


def test_check_map_tree(capsys):
    assert main(["check-map", "--map", str(DATA / "tree.map")]) == 1
    assert "violated at edge" in capsys.readouterr().out


def test_check_map_ok(capsys):
    assert main(["check-map", "--map", str(DATA / "empty-48-48.map")]) == 0
    assert "satisfied" in capsys.readouterr().out


def test_cutoff_exit_code(capsys):
    assert main(["solve", "--grid", "4x4", "--agents", "12", "--solver", "pibt", "--max-timestep", "1"]) == 1


def test_usage_errors(tmp_path, capsys):
    assert main(["solve", "--agents", "2"]) == 2
    assert main(["solve", "--map", str(tmp_path / "missing.map"), "--agents", "2"]) == 2
    assert main(["solve", "--grid", "3x3", "--agents", "2", "--window", "0"]) == 2
    assert main(["bogus"]) == 2
    assert main(["solve", "--golden", "fig3", "--solver", "winpibt-iter"]) == 2


def test_scen_input(capsys):
    argv = ["solve", "--map", str(DATA / "empty-48-48.map"), "--scen", str(DATA / "empty-48-48-random-1.scen"), "--agents", "10", "--window", "5"]
    assert main(argv) == 0


def test_render(tmp_path, capsys):
    out = tmp_path / "f.svg"
    assert main(["render", "--golden", "fig3", "-o", str(out)]) == 0
    assert out.read_text().count("<polyline") == 4


def test_render_from_result(tmp_path, capsys):
    rec = tmp_path / "r.jsonl"
    main(["solve", "--golden", "fig3", "--paths", "-o", str(rec)])
    out = tmp_path / "r.svg"
    assert main(["render", "--golden", "fig3", "--result", str(rec), "-o", str(out)]) == 0
    assert out.read_text().count("<polyline") == 4


def test_parse_seeds():
    assert parse_seeds("1..3") == [1, 2, 3]
    assert parse_seeds("4,9") == [4, 9]
