import json
import subprocess
import sys

import pytest

from sumsetlab.cli import main, parse_int_list, parse_lattice
from sumsetlab.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_parse_formats():
    assert parse_int_list("0,1,3,20,200") == [0, 1, 3, 20, 200]
    assert parse_int_list("{3, -1, 0}") == [3, -1, 0]
    assert parse_int_list("[0,1,3]") == [0, 1, 3]
    assert parse_lattice("0,0;1,0;0,1").points == ((0, 0), (1, 0), (0, 1))
    assert parse_lattice("[[0,0],[1,0]]").points == ((0, 0), (1, 0))
    for bad in ("1,x", "[1.5]", "{}", "1,1"):
        with pytest.raises(Exception):
            parse_int_list(bad)
    with pytest.raises(ParseError):
        parse_lattice("[[0,true]]")


@pytest.mark.parametrize("argv, expected", [
    (["sumset", "0,1,3,20,200", "--h", "4", "--size-only"], "65"),
    (["sumset", "0,0;1,0;0,1", "--h", "2", "--lattice", "--size-only"], "6"),
    (["sumset", "5", "--h", "9", "--size-only"], "1"),
    (["nvalue", "--h", "3", "--k", "3", "--trust", "20", "--threads", "1", "--no-cache"], "5"),
    (["nbound", "--h", "3", "--k", "3"], "2304"),
])
def test_plain_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_compress_commands(capsys):
    code, res = run_json(capsys, "compress", "0,2,7,11,70,85,91", "--h", "3")
    assert code == 0 and res["status"] == "ok"
    assert res["payload"]["final"] == [0, 2, 7, 11, 54, 69, 75]
    assert res["payload"]["steps"] == [{"j": 4, "delta": 16, "diam_before": 91, "diam_after": 75}]
    _, res = run_json(capsys, "compress", "0,1,2,3", "--h", "5")
    assert res["payload"]["final"] == [0, 1, 2, 3] and res["payload"]["steps"] == []
    _, res = run_json(capsys, "compress", "0,1,3,20,200", "--h", "4")
    assert res["payload"]["final"] == [0, 1, 3, 20, 81] and res["payload"]["size"] == 65


def test_compress_modes(capsys):
    _, res = run_json(capsys, "compress", "{5,6,8,25,205}", "--h", "4", "--tail-only")
    assert res["payload"]["final"] == [5, 6, 8, 25, 86]
    _, res = run_json(capsys, "compress", "0,2,7,11,70,85,91", "--h", "3", "--one-step")
    assert res["payload"]["final"] == [0, 2, 7, 11, 54, 69, 75]
    _, res = run_json(capsys, "compress", "0,0;1,1;100,2", "--h", "2", "--lattice")
    assert res["payload"]["final"] == [[0, 0], [1, 1], [3, 2]]
    assert res["payload"]["steps"][0]["axis"] == 1


def test_error_exit_codes(capsys):
    code, res = run_json(capsys, "compress", "0,1", "--h", "2")
    assert code == 2 and res["status"] == "error" and "payload" not in res
    code, res = run_json(capsys, "compress", "0,1,2", "--h", "2", "--one-step")
    assert code == 2 and res["error"]["type"] == "NoCompressibleGap"
    code, res = run_json(capsys, "range", "--h", "3", "--k", "4", "--N", "40", "--budget", "10", "--no-cache")
    assert code == 3 and res["error"]["type"] == "BudgetExceeded"
    code, _, err = run(capsys, "sumset", "1,q", "--h", "2")
    assert code == 2 and "ParseError" in err


def test_self_check_exit_code(capsys, monkeypatch):
    from sumsetlab import compress1d

    def broken(A, h):
        return A.__class__((0, 1, 2)), compress1d.CompressionTrace(A, A, 999)
    monkeypatch.setattr(compress1d, "compress_full", broken)
    code, res = run_json(capsys, "compress", "0,1,5", "--h", "2")
    assert code == 4 and res["error"]["type"] == "SelfCheckFailure"


def test_range_and_nvalue(capsys):
    code, res = run_json(capsys, "range", "--h", "2", "--k", "3", "--N", "5", "--threads", "1", "--no-cache")
    assert code == 0 and res["payload"]["achieved"] == [5, 6]
    _, res = run_json(capsys, "nvalue", "--h", "3", "--k", "3", "--trust", "20", "--threads", "1", "--no-cache")
    assert res["payload"]["N"] == 5 and res["diagnostics"]
    _, res = run_json(capsys, "nbound", "--h", "3", "--k", "4")
    assert res["payload"]["bound"] == 55296


def test_range_thread_independence(capsys):
    outs = []
    for n in ("1", "4"):
        _, res = run_json(capsys, "range", "--h", "3", "--k", "4", "--N", "12", "--threads", n, "--no-cache")
        outs.append(res)
    assert outs[0] == outs[1]


def test_range_uses_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SUMSETLAB_CACHE", str(tmp_path))
    _, first = run_json(capsys, "range", "--h", "3", "--k", "3", "--N", "8", "--threads", "1")
    _, second = run_json(capsys, "range", "--h", "3", "--k", "3", "--N", "8", "--threads", "1")
    assert first["payload"]["achieved"] == second["payload"]["achieved"]
    assert len((tmp_path / "range_reports.ndjson").read_text().splitlines()) == 1


def test_embed_and_verify_round_trip(capsys):
    _, res = run_json(capsys, "embed", "0,0;1,0;0,1", "--h", "2")
    assert res["payload"]["g"] == 3 and res["payload"]["image"] == [0, 1, 3]
    image = json.dumps(res["payload"]["image"])
    _, res = run_json(capsys, "verify-iso", "0,0;1,0;0,1", image, "--h", "2", "--lattice")
    assert res["payload"] == {"isomorphic": True, "witness": None}
    _, res = run_json(capsys, "embed", "0,0;1,0;0,1", "--h", "2", "--g", "10")
    assert res["payload"]["image"] == [0, 1, 10]
    _, res = run_json(capsys, "verify-iso", "0,1,2", "0,1,3", "--h", "2")
    assert res["payload"] == {"isomorphic": False, "witness": [[0, 2], [1, 1]]}
    _, res = run_json(capsys, "verify-iso", "0,1,3", "0,5,2", "--h", "3", "--mod-a", "13", "--mod-b", "13")
    assert res["payload"]["isomorphic"] is True


def test_rescale_output_round_trips(capsys):
    _, res = run_json(capsys, "rescale", "0,1,3,20,200", "--h", "4")
    p = res["payload"]
    assert p["p"] == 1601 and p["size"] == 65
    code, out, _ = run(capsys, "sumset", json.dumps(p["output"]), "--h", "4", "--size-only")
    assert out == "65"


def test_stdin_input():
    proc = subprocess.run([sys.executable, "-m", "sumsetlab", "sumset", "-", "--h", "4", "--size-only"],
                          input="[0,1,3,20,80]", capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "64"
