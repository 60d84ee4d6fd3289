"""End-to-end runs of the console entry point."""

import json
import math

import pytest

from padot.cli import main
from padot.domains import OpenBox, UpperDiagonalHalfPlane
from padot.transport import UnorderedTuple

UNIT_INTERVAL = OpenBox((0.0,), (1.0,))
SQUARE_JSON = '{"type":"open_box","low":[0,0],"high":[1,1]}'


@pytest.fixture
def interval_pair(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    UnorderedTuple(UNIT_INTERVAL, [(0.2,), (0.8,)]).save(a)
    UnorderedTuple(UNIT_INTERVAL, [(0.5,)]).save(b)
    return str(a), str(b)


def test_distance_pinned(interval_pair, capsys):
    a, b = interval_pair
    assert main(["distance", a, b]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "0.360555127546"
    assert float(out) == pytest.approx(math.sqrt(0.13), abs=1e-11)


def test_distance_exponent_flag(interval_pair, capsys):
    a, b = interval_pair
    assert main(["distance", a, b, "--p", "1"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(0.5, abs=1e-11)


def test_distance_empty_tuple(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    UnorderedTuple(UNIT_INTERVAL, []).save(a)
    UnorderedTuple(UNIT_INTERVAL, [(0.5,)]).save(b)
    assert main(["distance", str(a), str(b)]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(0.5, abs=1e-11)


def test_distance_domain_mismatch(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    UnorderedTuple(UNIT_INTERVAL, [(0.5,)]).save(a)
    UnorderedTuple(UpperDiagonalHalfPlane(), [(0.0, 1.0)]).save(b)
    assert main(["distance", str(a), str(b)]) == 2
    assert "different domains" in capsys.readouterr().err


def test_distance_missing_file(tmp_path, capsys):
    assert main(["distance", str(tmp_path / "no.json"),
                 str(tmp_path / "no.json")]) == 2


def test_embed_round_trip(tmp_path, capsys):
    t = tmp_path / "t.json"
    UnorderedTuple(
        OpenBox((0.0, 0.0), (1.0, 1.0)), [(0.25, 0.5)]
    ).save(t)
    out = tmp_path / "emb.json"
    assert main(["embed", str(t), "--m", "2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["M"] == 4
    assert data["h"] == 9
    assert data["entries"]
    # reruns are byte identical
    again = tmp_path / "emb2.json"
    assert main(["embed", str(t), "--m", "2", "--out", str(again)]) == 0
    assert out.read_bytes() == again.read_bytes()


def test_distortion_experiment(tmp_path, capsys):
    out = tmp_path / "exp.csv"
    assert main([
        "distortion-experiment", "--domain", SQUARE_JSON,
        "--m", "2", "--samples", "8", "--seed", "3", "--out", str(out),
    ]) == 0
    lines = out.read_text().splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    rows = [ln for ln in lines if ln and not ln.startswith("#")]
    assert any("seed=3" in ln for ln in header)
    assert rows[0] == "index,size_a,size_b,true_distance,embedded_distance,ratio"
    assert len(rows) == 9
    err = capsys.readouterr().err
    assert "distortion" in err


def test_nondoubling_witness_cli(tmp_path, capsys):
    out = tmp_path / "pts.csv"
    assert main([
        "nondoubling-witness", "--domain", SQUARE_JSON,
        "--count", "6", "--epsilon", "0.01", "--out", str(out),
    ]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("#")
    assert len(lines) == 7
    assert "6 points" in capsys.readouterr().out
    # unsupported domain family
    assert main([
        "nondoubling-witness", "--domain",
        '{"type":"punctured","points":[[0,0]]}',
    ]) == 2


def test_barcode_matrix_pinned(tmp_path, capsys):
    d1 = tmp_path / "d1.csv"
    d2 = tmp_path / "d2.csv"
    d1.write_text("# two bars\n0,2\n1,3\n")
    d2.write_text("0,2\n")
    assert main(["barcode", str(d1), str(d2)]) == 0
    out = capsys.readouterr().out.splitlines()
    rows = [ln for ln in out if not ln.startswith("#")]
    top = [float(v) for v in rows[0].split(",")]
    assert top[0] == 0.0
    assert top[1] == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_barcode_embed_report(tmp_path, capsys):
    d1 = tmp_path / "d1.csv"
    d2 = tmp_path / "d2.csv"
    d1.write_text("0,2\n1,3\n")
    d2.write_text("0,2\n")
    assert main(["barcode", str(d1), str(d2), "--embed"]) == 0
    out = capsys.readouterr().out
    assert "# embedded distances" in out
    assert "ratio range" in out


def test_barcode_bad_rows(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("0,2\n3,1\n")
    ok = tmp_path / "ok.csv"
    ok.write_text("0,2\n")
    assert main(["barcode", str(bad), str(ok)]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err


def test_verify_single_suite(capsys):
    assert main(["verify", "--suite", "barcode"]) == 0
    out = capsys.readouterr().out
    assert "[pass] barcode" in out
    assert "criterion 9" in out


def test_whitney_export(tmp_path, capsys):
    out = tmp_path / "cubes.jsonl"
    assert main([
        "whitney-export", "--domain",
        '{"type":"open_box","low":[0],"high":[1]}',
        "--low", "0.2", "--high", "0.3", "--neighbors", "--out", str(out),
    ]) == 0
    records = [json.loads(ln) for ln in out.read_text().splitlines()]
    assert {(r["generation"], tuple(r["corner"])) for r in records} == {
        (-2, (1,)), (-3, (1,)),
    }
    assert all("neighbors" in r for r in records)
    # window dimension mismatch
    assert main([
        "whitney-export", "--domain", SQUARE_JSON,
        "--low", "0.2", "--high", "0.3",
    ]) == 2


def test_no_arguments_is_a_usage_error():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2
