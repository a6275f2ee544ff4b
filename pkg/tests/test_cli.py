import json
import math

import pytest

from symwalk import cli

GOLDEN_RT5_ROWS = [
    "rt,sn,5,0,10.9087121146,2.07554696139",
    "rt,sn,5,1,3.38821486922,1.05994188806",
    "rt,sn,5,2,1.64510425202,0.432386849728",
    "rt,sn,5,6,0.192675821621,-1.43034556078",
]

GOLDEN_LAZY_AN_ROWS = [
    "lazy:3:1/2,an,5,0,7.68114574787,1.77085201164",
    "lazy:3:1/2,an,5,2,2.87646771108,0.917719006694",
]


def run(argv):
    return cli.main(argv)


def read_lines(path):
    return path.read_text().strip().split("\n")


def test_eval_time_expr():
    n = 200
    assert cli.eval_time_expr("nlogn-3n", n) == pytest.approx(n * math.log(n) - 3 * n)
    assert cli.eval_time_expr("0.5*nlogn+2n", n) == pytest.approx(0.5 * n * math.log(n) + 400)
    assert cli.eval_time_expr("12", n) == 12
    assert cli.eval_time_expr("n", n) == 200
    assert cli.eval_time_expr("2n", 7) == 14
    assert cli.eval_time_expr("-n+nlogn", 10) == pytest.approx(10 * math.log(10) - 10)
    with pytest.raises(ValueError):
        cli.eval_time_expr("n^2", 5)
    with pytest.raises(ValueError):
        cli.eval_time_expr("", 5)


def test_parse_range():
    assert cli.parse_range("15..18") == [15, 16, 17, 18]
    assert cli.parse_range("7") == [7]
    with pytest.raises(ValueError):
        cli.parse_range("9..5")


def test_fmt_real():
    assert cli.fmt_real(0) == "0.0"
    assert cli.fmt_real(26.8141750871234) == "26.8141750871"
    assert "e-5" in cli.fmt_real(2.68e-5)
    assert "e" not in cli.fmt_real(0.000123)


def test_profile_golden_csv(tmp_path):
    out = tmp_path / "rt5.csv"
    assert run(["profile", "--walk", "rt", "--n", "5", "--mode", "discrete",
                "--t-grid", "0,1,2,6", "--out", str(out)]) == 0
    lines = read_lines(out)
    assert lines[0].startswith("# manifest: ")
    manifest = json.loads(lines[0].split("# manifest: ", 1)[1])
    assert manifest["command"] == "profile" and manifest["version"]
    assert manifest["params"]["walk"] == "rt"
    assert lines[1] == "walk,group,n,t,d2,log10_d2_sq"
    assert lines[2:] == GOLDEN_RT5_ROWS
    # t = 0 row is sqrt(n! - 1)
    d2_at_zero = float(lines[2].split(",")[4])
    assert d2_at_zero == pytest.approx(math.sqrt(119), rel=1e-11)


def test_profile_golden_an_lazy(tmp_path):
    out = tmp_path / "lazy.csv"
    assert run(["profile", "--walk", "lazy:3:1/2", "--n", "5", "--group", "an",
                "--mode", "continuous", "--t-grid", "0,2", "--out", str(out)]) == 0
    assert read_lines(out)[2:] == GOLDEN_LAZY_AN_ROWS


def test_profile_json_format(tmp_path):
    out = tmp_path / "rt5.json"
    assert run(["profile", "--walk", "rt", "--n", "5", "--mode", "discrete",
                "--t-grid", "0,1", "--format", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"manifest", "results"}
    assert payload["results"][0]["walk"] == "rt"
    assert payload["results"][0]["t"] == 0 and payload["results"][0]["n"] == 5
    assert float(payload["results"][0]["d2"]) == pytest.approx(math.sqrt(119), rel=1e-11)
    assert payload["results"][1]["log10_d2_sq"] == pytest.approx(1.05994188806, rel=1e-9)


def test_profile_rerun_payload_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["profile", "--walk", "class:3", "--n", "6", "--mode", "discrete",
            "--t-grid", "0,3,9"]
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert read_lines(a)[1:] == read_lines(b)[1:]  # manifest differs in wall time only


def test_profile_auto_grid(tmp_path):
    out = tmp_path / "auto.csv"
    assert run(["profile", "--walk", "ttr-bound", "--n", "30", "--mode", "discrete",
                "--out", str(out)]) == 0
    lines = read_lines(out)
    assert len(lines) > 10
    # the curve crosses below sqrt(2) by the end of the auto grid
    last_d2 = float(lines[-1].split(",")[4])
    assert last_d2 < math.sqrt(2)


def test_profile_continuous_auto_crosses_threshold(tmp_path):
    # the rt curve is at or below 1 from t = (n/2)(log n + 2) onwards
    out = tmp_path / "rt20.csv"
    n = 20
    assert run(["profile", "--walk", "rt", "--n", str(n), "--mode", "continuous",
                "--t-grid", "auto", "--out", str(out)]) == 0
    threshold = (n / 2) * (math.log(n) + 2)
    seen_past_threshold = False
    for line in read_lines(out)[2:]:
        fields = line.split(",")
        t, d2 = float(fields[3]), float(fields[4])
        if t >= threshold:
            seen_past_threshold = True
            assert d2 <= 1.0
    assert seen_past_threshold


def test_verify_rt_discrete_suite(tmp_path):
    out = tmp_path / "rt.json"
    assert run(["verify", "--suite", "rt-discrete", "--n", "15..16", "--c", "0",
                "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert [r["n"] for r in payload["results"]] == [15, 16]
    for r in payload["results"]:
        assert r["pass"] and r["computed"] <= r["guaranteed"] == 2.0


def test_profile_invalid_args(tmp_path):
    assert run(["profile", "--walk", "bogus", "--n", "5"]) == cli.EXIT_BAD_ARGS
    assert run(["profile", "--walk", "rt", "--n", "5", "--group", "an"]) == cli.EXIT_BAD_ARGS
    assert run(["profile", "--walk", "class:9", "--n", "5"]) == cli.EXIT_BAD_ARGS


def test_verify_ttr_suite(tmp_path):
    out = tmp_path / "ttr.json"
    assert run(["verify", "--suite", "ttr", "--n", "5..10", "--c", "0,1",
                "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert len(payload["results"]) == 12
    assert all(r["pass"] for r in payload["results"])
    assert payload["results"][0]["name"] == "ttr"


def test_verify_exit_code_on_failure(tmp_path):
    # the phi_1 lemma bound is genuinely violated at n = 15, which makes a
    # stable fixture for the non-zero exit contract
    out = tmp_path / "lem.json"
    assert run(["verify", "--suite", "lemmas", "--n", "15",
                "--out", str(out)]) == cli.EXIT_VERIFY_FAILED
    payload = json.loads(out.read_text())
    failed = [r for r in payload["results"] if not r["pass"]]
    assert [r["name"] for r in failed] == ["lemma:phi1"]


def test_verify_oracle_suite(tmp_path):
    out = tmp_path / "oracle.json"
    assert run(["verify", "--suite", "oracle", "--n", "4", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    names = {r["name"] for r in payload["results"]}
    assert names == {f"oracle:{w}" for w in cli.ORACLE_WALKS}
    assert all(r["pass"] for r in payload["results"])


def test_verify_resource_guard(tmp_path):
    assert run(["verify", "--suite", "oracle", "--n", "8",
                "--out", str(tmp_path / "x.json")]) == cli.EXIT_RESOURCE


def test_verify_threads_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("SYMWALK_THREADS", "1")
    out = tmp_path / "ttr.json"
    assert run(["--threads", "4", "verify", "--suite", "ttr", "--n", "5..6",
                "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["manifest"]["params"]["threads"] == 1


def test_simulate(tmp_path):
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["simulate", "--walk", "ttr", "--n", "15", "--t", "n+5", "--j", "3",
            "--N", "2000", "--seed", "11"]
    assert run(argv + ["--out", str(out_a)]) == 0
    assert run(argv + ["--out", str(out_b)]) == 0
    lines = read_lines(out_a)
    assert lines[1] == "walk,n,t,j,n_samples,seed,tv_lower,std_err,u_exact"
    assert lines[2].startswith("ttr,15,20,3,2000,11,")
    assert lines[2] == read_lines(out_b)[2]  # same seed, same payload
    fields = lines[2].split(",")
    assert float(fields[8]) == pytest.approx(0.0803013970761, rel=1e-9)


def test_simulate_minimum_samples(tmp_path):
    assert run(["simulate", "--walk", "ttr", "--n", "10", "--t", "5", "--j", "2",
                "--N", "500", "--seed", "1", "--out", str(tmp_path / "x.csv")]) == cli.EXIT_BAD_ARGS


def test_precision_flag_guard():
    with pytest.raises(SystemExit) as exc:
        cli.main(["--precision", "16", "verify", "--suite", "ttr", "--n", "5"])
    assert exc.value.code == 2
