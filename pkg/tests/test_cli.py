import json
import re

import pytest

from gkdim.cli import main
from gkdim.hilbert import RationalSeries, expand


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert sum(1 for line in out.splitlines() if re.match(r"\s*\d+\s+verified\s", line)) == 7
    assert run(capsys, "verify", "--field", "mod:7")[0] == 0
    code, _, err = run(capsys, "verify", "--field", "mod:2")
    assert code == 2 and "characteristic 2" in err


def test_verify_dump(capsys):
    code, out, _ = run(capsys, "verify", "--dump")
    assert code == 0 and "lhs = [" in out


def test_growth_csv(capsys):
    code, out, _ = run(capsys, "growth", "--algebra", "lie", "--m", "2", "--max-degree", "8", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "degree,dim" and len(lines) == 9
    oracle = expand(RationalSeries((0, 2), ()) + RationalSeries((0, 0, 1, 2), (2, 2, 2)), 8)
    assert [int(l.split(",")[1]) for l in lines[1:]] == oracle[1:]


def test_growth_trace0_m3_json(capsys):
    code, out, _ = run(capsys, "growth", "--algebra", "trace0", "--m", "3", "--max-degree", "6", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["algebra"] == "trace0" and data["m"] == 3 and data["backend"] == "exact"
    assert data["meta"]["engine_version"]
    assert [r["dim"] for r in data["rows"]] == [1, 0, 6, 1, 21, 6, 56]


def test_growth_cap(capsys):
    code, _, err = run(capsys, "growth", "--algebra", "lie", "--m", "2", "--max-degree", "30")
    assert code == 3 and "cap" in err


def test_series(capsys):
    code, out, _ = run(capsys, "series", "(1+2t+t^2)/((1-t^2)^3)", "--terms", "6")
    assert code == 0
    assert "1, 2, 4, 6, 9, 12, 16" in out and "pole order at 1:   3" in out
    code, out, _ = run(capsys, "series", "1/((1-t^2)^3)", "--format", "json")
    assert json.loads(out)["gkdim"] == 3
    assert run(capsys, "series", "1/(1+t)")[0] == 2


def test_fit(tmp_path, capsys):
    src = tmp_path / "w.csv"
    assert main(["growth", "--algebra", "assoc", "--m", "2", "--max-degree", "8", "-o", str(src)]) == 0
    code, out, _ = run(capsys, "fit", str(src), "--factors", "2,2,2")
    data = json.loads(out)
    assert code == 0 and data["fit"]["numerator"] == [1, 2, 1] and data["pole_multiplicity"] == 3
    code, out, _ = run(capsys, "fit", str(src), "--search", "3,0")
    assert json.loads(out)["fit"]["denominator_factors"] == [2, 2, 2]
    code, out, _ = run(capsys, "fit", str(src), "--factors", "1")
    assert code == 1 and json.loads(out)["fit"] is None


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "--m", "2")
    assert code == 0
    assert "GKdim(L)   3 vs 3(m-1) = 3" in out and "verdict: all checks pass" in out
    assert run(capsys, "reproduce", "--m", "4")[0] == 3


def test_outputs_are_deterministic(tmp_path):
    for argv in (
        ["growth", "--algebra", "assoc", "--m", "2", "--max-degree", "6", "--format", "json"],
        ["reproduce", "--m", "2", "--format", "json"],
    ):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(argv + ["-o", str(a)]) == 0
        assert main(argv + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["growth"])
    assert exc.value.code == 2
