import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from pegasus_topo.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def p2file(tmp_path):
    path = tmp_path / "p2.edgelist"
    assert main(["generate", "--graph", "pegasus", "--x", "2", "--y", "2", "--out", str(path)]) == 0
    return path


def test_generate_matches_golden(p2file):
    assert p2file.read_bytes() == (GOLDEN / "pegasus_2x2.edgelist").read_bytes()


def test_generate_to_stdout(capsys):
    code, out, _ = run(["generate", "--graph", "chimera", "--x", "1", "--y", "1"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "# pegasus-topo v1 X=1 Y=1 Z=1"
    assert len(out.splitlines()) == 17


@pytest.mark.parametrize("fmt", ["edgelist", "dot", "graphml", "json"])
def test_generate_formats_are_stable(tmp_path, fmt):
    paths = [tmp_path / f"{n}.{fmt}" for n in range(2)]
    for p in paths:
        assert main(["generate", "--graph", "pegasus", "--x", "2", "--y", "3", "--format", fmt, "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_chimera_16_analyze(tmp_path, capsys):
    path = tmp_path / "c16.edgelist"
    assert main(["generate", "--graph", "chimera", "--x", "16", "--y", "16", "--z", "1", "--out", str(path)]) == 0
    code, out, _ = run(["analyze", "--in", str(path), "--degrees"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "analyze/1"
    assert report["vertices"] == 2048
    # side i=1 loses a horizontal link in the two edge columns, i=0 a vertical one in the edge rows
    assert report["degrees"] == {"5": 2 * (2 * 16 * 4), "6": 2048 - 256}


def test_analyze_golden(capsys):
    code, out, _ = run(
        ["analyze", "--in", str(GOLDEN / "pegasus_2x2.edgelist"),
         "--degrees", "--compress", "--planarity", "--find-k4", "3"],
        capsys,
    )
    assert code == 0
    assert out == (GOLDEN / "pegasus_2x2_analyze.json").read_text()


def test_analyze_k4_zero_limit(p2file, capsys):
    code, out, _ = run(["analyze", "--in", str(p2file), "--find-k4", "0"], capsys)
    assert code == 0
    assert json.loads(out)["k4"] == {"limit": 0, "found": 0, "cliques": []}


def test_check_rules_golden(capsys):
    code, out, _ = run(["check-rules", "--x", "5", "--y", "5"], capsys)
    assert code == 0
    assert out == (GOLDEN / "check_rules_5x5.txt").read_text()


def test_check_rules_failure(monkeypatch, capsys):
    from pegasus_topo import pegasus
    from pegasus_topo.graph import ColorGroup

    broken = list(pegasus.INTERLAYER_RULES)
    broken[0] = pegasus.InterLayerRule((0, 1), 0, 0, 1, 0, ColorGroup.BLUE)
    monkeypatch.setattr(pegasus, "INTERLAYER_RULES", tuple(broken))
    code, out, _ = run(["check-rules", "--x", "3", "--y", "3"], capsys)
    assert code == 1
    assert "MISMATCH" in out


def test_render_golden(tmp_path):
    src = tmp_path / "c5.edgelist"
    out = tmp_path / "c5.svg"
    assert main(["generate", "--graph", "chimera", "--x", "5", "--y", "5", "--out", str(src)]) == 0
    assert main(["render", "--in", str(src), "--style", "classic", "--tilted", "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / "chimera_5x5_tilted_classic.svg").read_bytes()


def test_render_compressed_needs_compressed_input(p2file, capsys):
    code, _, err = run(["render", "--in", str(p2file), "--style", "compressed", "--out", "-"], capsys)
    assert code == 2
    assert "usage:" in err


def test_render_compressed_after_convert(p2file, tmp_path, capsys):
    packed = tmp_path / "p2.json"
    assert main(["convert", "--in", str(p2file), "--format", "compressed", "--out", str(packed)]) == 0
    code, out, _ = run(["render", "--in", str(packed), "--style", "compressed", "--colors", "mono"], capsys)
    assert code == 0
    assert out.count('class="vertex"') == 12
    code, _, _ = run(["render", "--in", str(packed), "--style", "diamond"], capsys)
    assert code == 2


@pytest.mark.parametrize("fmt", ["dot", "graphml", "json", "edgelist"])
def test_convert_round_trip(p2file, tmp_path, fmt):
    mid = tmp_path / f"mid.{fmt}"
    back = tmp_path / "back.edgelist"
    assert main(["convert", "--in", str(p2file), "--format", fmt, "--out", str(mid)]) == 0
    assert main(["convert", "--in", str(mid), "--format", "edgelist", "--out", str(back)]) == 0
    assert back.read_bytes() == p2file.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "--graph", "pegasus", "--x", "2", "--y", "2", "--bogus"],
        ["generate", "--graph", "pegasus", "--x", "2", "--y", "2", "--z", "1"],
        ["generate", "--graph", "pegasus", "--x", "0", "--y", "2"],
        ["generate", "--graph", "zephyr", "--x", "2", "--y", "2"],
        ["generate", "--graph", "chimera", "--x", "2", "--y", "2", "--z", "2"],
        ["render", "--in", "x", "--style", "fancy"],
        ["analyze", "--in", "x", "--find-k4", "-1"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert "usage:" in err


def test_missing_input_is_io_error(tmp_path, capsys):
    code, _, err = run(["analyze", "--in", str(tmp_path / "nope.edgelist")], capsys)
    assert code == 3
    assert "nope.edgelist" in err


def test_malformed_input_is_io_error(tmp_path, capsys):
    bad = tmp_path / "bad.edgelist"
    bad.write_text("# pegasus-topo v1 X=1 Y=1 Z=1\n0 4 chimera-intra\n0 oops chimera-intra\n")
    code, _, err = run(["convert", "--in", str(bad), "--format", "json"], capsys)
    assert code == 3
    assert "line 3" in err


def test_unwritable_output_is_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "out.edgelist"
    code, _, err = run(["generate", "--graph", "chimera", "--x", "1", "--y", "1", "--out", str(target)], capsys)
    assert code == 3
    assert str(target) in err


def test_stdin_and_stdout_in_subprocess():
    golden = (GOLDEN / "pegasus_2x2.edgelist").read_bytes()
    proc = subprocess.run(
        [sys.executable, "-m", "pegasus_topo", "convert", "--in", "-", "--format", "json", "--out", "-"],
        input=golden,
        capture_output=True,
        check=True,
    )
    back = subprocess.run(
        [sys.executable, "-m", "pegasus_topo", "convert", "--in", "-", "--format", "edgelist"],
        input=proc.stdout,
        capture_output=True,
        check=True,
    )
    assert back.stdout == golden


def test_stdin_via_monkeypatch(monkeypatch, capsys):
    data = (GOLDEN / "pegasus_2x2.edgelist").read_bytes()
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(data)))
    code, out, _ = run(["analyze", "--in", "-"], capsys)
    assert code == 0
    assert json.loads(out)["edges"] == 528
