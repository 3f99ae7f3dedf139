from __future__ import annotations

import json
import subprocess
import sys

import pytest

from oberwolfach.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_NEGATIVE, EXIT_OK, main


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_tables_output(capsys):
    code, out = run(capsys, "tables")
    lines = out.strip().splitlines()
    assert code == EXIT_OK
    assert lines[0] == "table,y0,l1,l2"
    assert len(lines) == 22
    assert "1,672,3,4" in lines and "2,1230,8,9" in lines


def test_tables_figure(capsys, tmp_path):
    fig = tmp_path / "tables.png"
    code, _ = run(capsys, "tables", "--delimiter", "\t", "--figure", str(fig))
    assert code == EXIT_OK and fig.stat().st_size > 0


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "-L", "3,4", "-y", "24")
    obj = json.loads(out)
    assert code == EXIT_OK and obj["y0"] == 672 and obj["split"]["delta"] == 1
    assert run(capsys, "bounds", "-L", "2,4")[0] == EXIT_INVALID


def test_graceful_exit_codes(capsys, tmp_path):
    assert run(capsys, "graceful", "-k", "1", "-L", "3")[0] == EXIT_NEGATIVE
    out = tmp_path / "g.json"
    assert run(capsys, "graceful", "-k", "3", "-L", "3", "--out", str(out))[0] == EXIT_OK
    assert json.loads(out.read_text())["status"] == "found"
    assert run(capsys, "graceful", "-k", "30", "-L", "7,9,11", "--budget", "20")[0] == EXIT_BUDGET


def test_staged_chain(capsys, tmp_path):
    g, o, p, e = (tmp_path / n for n in ("g.json", "o.json", "p.json", "e.json"))
    assert run(capsys, "graceful", "-k", "0", "-L", "3,4", "--out", str(g))[0] == EXIT_OK
    assert run(capsys, "double", "--from-graceful", str(g), "--epsilon", "2", "--out", str(o), "--format", "dot")[0] == EXIT_OK
    assert len(list(tmp_path.glob("o.json.factor*.dot"))) == 8
    assert run(capsys, "halve", "--in", str(o), "--redistribute", "--out", str(p))[0] == EXIT_OK
    assert len(json.loads(p.read_text())["factors"]) == 15
    assert run(capsys, "extend", "--in", str(p), "--out", str(e))[0] == EXIT_OK
    code, out = run(capsys, "verify", str(e), "--structure", "25,3,4")
    assert code == EXIT_OK and json.loads(out)["valid"]
    assert run(capsys, "verify", str(e), "--structure", "26,3,4")[0] == EXIT_NEGATIVE


def test_halve_plain_decomposition(capsys, tmp_path):
    g, o, p = (tmp_path / n for n in ("g.json", "o.json", "p.json"))
    run(capsys, "graceful", "-k", "3", "-L", "3", "--out", str(g))
    run(capsys, "double", "--from-graceful", str(g), "--out", str(o))
    obj = json.loads(o.read_text())
    del obj["pyramidal"]
    o.write_text(json.dumps(obj))
    assert run(capsys, "halve", "--in", str(o))[0] == EXIT_INVALID
    assert run(capsys, "halve", "--in", str(o), "-L", "3", "--out", str(p))[0] == EXIT_OK
    assert len(json.loads(p.read_text())["factors"]) == 14


def test_extend_infeasible(capsys, tmp_path):
    parts = {"order": 5, "factors": [{"cycles": [], "paths": [[0, 1, 2, 3, 4]]}, {"cycles": [], "paths": [[0, 2, 4, 1, 3, 0]]}]}
    f = tmp_path / "parts.json"
    f.write_text(json.dumps(parts))
    assert run(capsys, "extend", "--in", str(f))[0] == EXIT_INVALID


def test_solve_and_verify(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    fig = tmp_path / "sol.png"
    code, _ = run(capsys, "solve", "-y", "26", "-L", "3,4", "--out", str(cert), "--format", "dot", "--figure", str(fig))
    assert code == EXIT_OK and fig.exists()
    assert len(list(tmp_path.glob("cert.json.factor*.dot"))) == 16
    code, out = run(capsys, "verify", str(cert))
    assert code == EXIT_OK and "certificate: valid" in out
    obj = json.loads(cert.read_text())
    cyc = max(obj["solution"]["factors"][0]["cycles"], key=len)
    cyc[0], cyc[1] = cyc[1], cyc[0]
    cert.write_text(json.dumps(obj))
    assert run(capsys, "verify", str(cert))[0] == EXIT_NEGATIVE


def test_solve_rejections(capsys):
    assert run(capsys, "solve", "-y", "9", "-L", "3")[0] == EXIT_INVALID
    assert run(capsys, "solve", "-y", "26", "-L", "3,4", "--strict")[0] == EXIT_INVALID


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "oberwolfach", "bounds", "-L", "3,4"], capture_output=True, text=True)
    assert res.returncode == 0 and '"y0": 672' in res.stdout


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["bounds"])
    assert exc.value.code == 2
