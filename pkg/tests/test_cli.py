import io
import json

from c2eff.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_verify_coeff():
    code, text = run("verify", "--suite", "coeff", "--s", "20", "--w", "20")
    assert code == 0 and "0 mismatches" in text


def test_chart_coweight3():
    code, text = run("chart", "--coweight", "3", "--page", "e2", "--format", "text", "--s", "8", "--w", "8", "--q-max", "10")
    assert code == 0 and "empty chart" in text


def test_e2_json():
    code, text = run("e2", "--s-min", "-4", "--s-max", "4", "--w-min", "-4", "--w-max", "4", "--q-max", "12", "--json")
    data = json.loads(text)
    assert code == 0 and data["schema_version"] == 1 and data["groups"]


def test_usage_errors(capsys):
    assert run("e2", "--s-min", "3", "--s-max", "1")[0] == 2
    assert "--s-min" in capsys.readouterr().err
    assert run("e2", "--q-max", "-1")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("chart")[0] == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("s_min = -3\ns_max = 3\nw_min = -3\nw_max = 3  # small\nq_max = 6\n")
    code, text = run("e2", "--config", str(cfg), "--json", "--s-max", "2")
    win = json.loads(text)["window"]
    assert code == 0 and win == {"s_min": -3, "s_max": 2, "w_min": -3, "w_max": 3, "q_max": 6}
    cfg.write_text("colour = red\n")
    assert run("e2", "--config", str(cfg))[0] == 2


def test_verify_failure_exit(monkeypatch):
    from c2eff import checks, cli

    def failing(window):
        r = checks.Report("forced")
        r.add("broken")
        return [r]
    monkeypatch.setitem(cli.SUITES, "coeff", failing)
    code, text = run("verify", "--suite", "coeff")
    assert code == 1 and "broken" in text


def test_export(tmp_path):
    code, _ = run("export", str(tmp_path / "out"), "--s", "4", "--w", "4", "--q-max", "8")
    assert code == 0
    assert json.loads((tmp_path / "out" / "homotopy.json").read_text())["groups"]


def test_homotopy_text():
    code, text = run("homotopy", "--s", "4", "--w", "4", "--q-max", "8")
    assert code == 0 and "(0,0)" in text
