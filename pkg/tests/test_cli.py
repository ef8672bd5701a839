import json

import pytest

from lamsub.algebra import z2_xor
from lamsub.cli import RunConfig, run
from lamsub.labelled import ProofSkeleton
from lamsub.terms import IDENT, TRU, FLS, lam, to_json_tree
from lamsub.topology import sierpinski


def invoke(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(fuel=0)
    with pytest.raises(ValueError):
        RunConfig(fmt="yaml")


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as e:
        run(["no-such-command"])
    assert e.value.code == 2


def test_reduce(capsys):
    code, out = invoke(capsys, ["reduce", r"(\x.x) (\y.y)"])
    assert code == 0
    assert "normal-form" in out


def test_graph_three_cycle(capsys):
    code, out = invoke(capsys, ["graph", "Theta", "--rules", "beta"])
    assert code == 0
    assert "nodes=3" in out


def test_graph_dot_format(capsys):
    code, out = invoke(capsys, ["--format", "dot", "graph", "Theta", "--rules", "beta"])
    assert code == 0
    assert out.startswith("digraph")


def test_pi_eq_verdicts(capsys):
    code, out = invoke(capsys, ["pi-eq", "Theta Omega Omega", "Omega"])
    assert code == 0 and "proved" in out
    code, out = invoke(capsys, ["pi-eq", "Theta", "Omega"])
    assert code == 1 and "refuted" in out


def test_seed_in_header(capsys):
    _, out = invoke(capsys, ["--seed", "42", "reduce", "I"])
    assert "seed=42" in out


def test_deterministic_output(capsys):
    _, first = invoke(capsys, ["--format", "json", "graph", "Theta", "--rules", "beta"])
    _, second = invoke(capsys, ["--format", "json", "graph", "Theta", "--rules", "beta"])
    assert first == second


def test_alg_commands(tmp_path, capsys):
    path = tmp_path / "z2.json"
    path.write_text(json.dumps(z2_xor().to_json()))
    code, out = invoke(capsys, ["alg-check", str(path)])
    assert code == 0 and "zero_unorderable: True" in out
    code, out = invoke(
        capsys, ["alg-search", str(path), "--subtractive", "--n", "2", "--depth", "2"]
    )
    assert code == 0 and "add(x, y)" in out


def test_top_check_and_gamma(tmp_path, capsys):
    alg = tmp_path / "z2.json"
    alg.write_text(json.dumps(z2_xor().to_json()))
    space = tmp_path / "sierpinski.json"
    space.write_text(json.dumps(sierpinski().to_json()))
    code, out = invoke(capsys, ["top-check", str(alg), str(space)])
    assert code == 1  # xor is not continuous for this topology
    assert "continuous: False" in out
    code, out = invoke(capsys, ["gamma", str(space), "--point", "0"])
    assert code == 0 and "step 0: []" in out


def test_jk_transform(tmp_path, capsys):
    f = lam("a", lam("b", IDENT))
    sk = ProofSkeleton(left=IDENT, right=IDENT, fs=[f, f], ps=[TRU], qs=[FLS])
    payload = {"skeleton": sk.to_json(), "witnesses": [to_json_tree(f)]}
    path = tmp_path / "skeleton.json"
    path.write_text(json.dumps(payload))
    code, out = invoke(capsys, ["jk-transform", str(path)])
    assert code == 0 and "links 2 -> 1" in out


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('fuel = 3\nseed = 7\nfmt = "text"\n')
    _, out = invoke(capsys, ["--config", str(cfg), "reduce", "I"])
    assert "seed=7" in out and "fuel=3" in out


def test_missing_file_exits_2(capsys):
    code, _ = invoke(capsys, ["gamma", "/nonexistent.json"])
    assert code == 2
