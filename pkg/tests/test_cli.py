import json
import subprocess
import sys

import pytest

from tmcantor.cli import EXIT_DOMAIN, EXIT_OK, EXIT_UNDECIDED, render, run


def call(*argv):
    res = run(list(argv))
    return res, json.loads(render(res)) if res.fmt == "json" else render(res)


def test_freq():
    res, out = call("freq", "--max-digit", "1", "--seed", "0", "--block", "01")
    assert res.exit_code == EXIT_OK
    assert out["payload"]["value"] == "1/3"
    row = out["payload"]["rows"][0]
    assert row["block"] == "01" and row["reflected"] == "10"


def test_freq_several_blocks_and_difference_digits():
    res, out = call("freq", "--block", "0", "00", "000", "--difference-digits")
    assert [r["value"] for r in out["payload"]["rows"]] == ["1/2", "1/6", "0"]
    assert out["payload"]["difference_digits"] == {"-1": "1/3", "0": "1/3", "1": "1/3"}


def test_dim_example():
    res, out = call("dim", "--m", "1", "--q", "3", "--period", "1,-1,0")
    d = out["payload"]["dimension"]
    assert d["symbolic"] == "(1/3)·log2/log3"
    assert abs(float(d["numeric"]["value"]) - 0.2103) < 1e-4


def test_bases_example():
    res, out = call("bases", "--max-digit", "1", "--k", "2")
    rows = {r["name"]: r["value"] for r in out["payload"]["rows"]}
    assert rows["q1"]["value"].startswith("1.6180339887")
    assert rows["q2"]["value"].startswith("1.7548776662")
    assert all(float(rows[k]["radius"]) <= 1e-12 for k in ("q1", "q2"))


def test_bases_locate_and_exact_serialisation():
    res, out = call("bases", "--max-digit", "2", "--k", "3", "--locate", "5/2")
    assert out["payload"]["locate"]["case"] == "between"
    assert out["payload"]["rows"][0]["value"]["exact"] == "2"


def test_negative_leading_digits_and_flags_after_command():
    res, out = call("unique", "--m", "1", "--q", "27/10", "--period=-1,1", "--tolerance", "1e-20")
    assert out["payload"]["verdict"] == "unique"
    assert out["precision"]["tolerance"] == "1/100000000000000000000"


def test_exit_codes():
    assert run(["unique", "--m", "1", "--q", "5/2", "--period", "5"]).exit_code == EXIT_DOMAIN
    assert run(["dim", "--m", "1", "--q", "2", "--period", "0"]).exit_code == EXIT_DOMAIN
    assert run(["dim", "--m", "1", "--q", "5/2", "--period", "1,0"]).exit_code == EXIT_DOMAIN
    assert run(["nonsense"]).exit_code == EXIT_DOMAIN
    assert run(["--tolerance", "1e-3", "unique", "--m", "1", "--q", "qKL", "--seq", "1,-1"]).exit_code \
        in (EXIT_OK, EXIT_UNDECIDED)
    # q within tolerance of q_KL: classification refuses to guess
    assert run(["--tolerance", "1e-8", "classify", "--m", "1", "--q", "2.5359480481"]).exit_code == EXIT_UNDECIDED


def test_classify():
    res, out = call("classify", "--m", "2", "--q", "qKL")
    assert out["payload"]["case"] == "symmetric_kl"
    res, out = call("classify", "--m1", "2", "--m2", "1", "--q", "5/2")
    assert [v["symbolic"] for v in out["payload"]["values"]] == ["0", "log2/log(5/2)"]


def test_stream_estimate():
    res, out = call("--horizon", "4096", "dim", "--m", "1", "--q", "qKL", "--stream")
    assert res.exit_code == EXIT_OK and out["payload"]["horizon"] == 4096


def test_csv():
    res = run(["--format", "csv", "examples"])
    text = render(res)
    assert text.splitlines()[0].startswith("block,reflected,n,N,P,value")
    assert "01,10,1,2,10,1/3" in text


@pytest.mark.parametrize("argv", [
    ["family", "pm-zero", "--lam", "2/7", "--m", "1"],
    ["family", "pm-zero", "--lam", "0", "--m", "2"],
    ["family", "blocks", "--m", "1", "--q", "2.58", "--lam", "1/3"],
])
def test_family_round_trip(argv):
    res, out = call(*argv)
    seq = out["payload"]["seq"]
    m = argv[argv.index("--m") + 1]
    q = "2.58" if "blocks" in argv else ("7/2" if m == "1" else "4")
    r1 = run(["unique", "--m", m, "--q", q, f"--seq={seq}"])
    r2 = run(["dim", "--m", m, "--q", q, f"--seq={seq}"])
    assert r1.exit_code == EXIT_OK and r1.payload["verdict"] == "unique"
    assert r2.exit_code == EXIT_OK


def test_self_similar_family_round_trip():
    res, out = call("family", "self-similar", "--m", "1", "--q", "3", "--mesh", "5")
    for row in out["payload"]["rows"]:
        r = run(["dim", "--m", "1", "--q", "3", f"--seq={row['seq']}"])
        assert r.payload["dimension"]["symbolic"] == row["dimension"]["symbolic"]


def test_examples_deterministic():
    cmd = [sys.executable, "-m", "tmcantor", "examples"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    rows = json.loads(a)["payload"]["thue_morse_blocks"]
    assert [r["block"] for r in rows] == ["0", "01", "00", "000", "001", "010", "011", "00101"]
    assert [r["agrees"] for r in rows] == [True] * 7 + [False]
