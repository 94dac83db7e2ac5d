import io
import json
import pathlib
import typing

import pytest

from realchip import cli
from realchip.builders import cycle_graph, identity_structure
from realchip.config import BUDGET_ENV_VAR
from realchip.graph import serialize


def run(capsys, *argv: str) -> tuple[int, typing.Any]:
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def write(tmp_path: pathlib.Path, name: str, data: object) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def tripod_file(tmp_path: pathlib.Path) -> str:
    return write(
        tmp_path,
        "tripod.json",
        {
            "vertices": ["r", "u", "u_bar"],
            "edges": [{"id": "e", "ends": ["r", "u"]}, {"id": "e_bar", "ends": ["r", "u_bar"]}],
            "sigma_v": {"u": "u_bar", "u_bar": "u"},
            "sigma_e": {"e": "e_bar", "e_bar": "e"},
        },
    )


def test_gen_and_info(capsys, tmp_path: pathlib.Path):
    code, graph = run(capsys, "gen", "example1", "--g", "4", "--s", "3", "--a", "0")
    assert code == cli.EXIT_OK
    code, info = run(capsys, "info", write(tmp_path, "g.json", graph))
    assert code == cli.EXIT_OK
    assert (info["genus"], info["s"], info["a"]) == (4, 3, 0)
    assert info["constraints"] == "pass"
    assert info["violations"] == []
    assert info["m_graph"] is False


def test_info_from_stdin(capsys, monkeypatch, tripod_file: str):
    monkeypatch.setattr("sys.stdin", io.StringIO(pathlib.Path(tripod_file).read_text()))
    code, info = run(capsys, "info", "-")
    assert code == cli.EXIT_OK
    assert info["m_graph"] is True
    assert info["strong_m_graph"] is True


def test_gen_random_is_deterministic(capsys):
    first = run(capsys, "gen", "random", "--seed", "9", "--max-vertices", "7", "--max-edges", "9")
    second = run(capsys, "gen", "random", "--seed", "9", "--max-vertices", "7", "--max-edges", "9")
    assert first == second
    assert first[0] == cli.EXIT_OK


def test_rank_and_real_rank(capsys, tmp_path: pathlib.Path):
    _, graph = run(capsys, "gen", "example2", "--base", "cycle", "--size", "3")
    path = write(tmp_path, "g.json", graph)
    code, result = run(capsys, "rank", path, '{"v": 1}')
    assert code == cli.EXIT_OK
    assert result["rank"] == 0
    assert result["obstruction"] is not None
    code, result = run(capsys, "rank", path, '{"v": 1}', "--real")
    assert code == cli.EXIT_OK
    assert result["rank"] == 1
    assert result["obstruction"] is None


def test_reduce(capsys, tripod_file: str):
    code, result = run(capsys, "reduce", tripod_file, '{"u": 1, "u_bar": 1}')
    assert code == cli.EXIT_OK
    assert result["reduced"] == {"r": 2}
    assert result["witness"] == {"r": 0, "u": 1, "u_bar": 1}
    assert result["parity"] == [0]


def test_subdivide(capsys, tmp_path: pathlib.Path):
    path = write(
        tmp_path,
        "edge.json",
        {"vertices": ["v", "w"], "edges": [{"id": "e", "ends": ["v", "w"]}], "sigma_v": {"v": "w", "w": "v"}},
    )
    code, graph = run(capsys, "subdivide", path, "2")
    assert code == cli.EXIT_OK
    assert graph["vertices"] == ["e.v1", "v", "w"]
    assert graph["sigma_e"] == {"e.1": "e.2", "e.2": "e.1"}


def test_metric_commands(capsys, tmp_path: pathlib.Path):
    path = write(
        tmp_path,
        "path.json",
        {"vertices": ["p0", "p1"], "edges": [{"id": "k0", "ends": ["p0", "p1"], "length": "1"}]},
    )
    code, result = run(capsys, "metric", "equivalent", path, '[[["vertex", "p0"], 1]]', '[[["edge", "k0", "1/2"], 1]]')
    assert code == cli.EXIT_OK
    assert result == {"equivalent": True, "slopes": {"k0": [-1, 0]}}
    code, result = run(capsys, "metric", "info", path)
    assert code == cli.EXIT_OK
    assert (result["genus"], result["s"], result["a"]) == (0, 1, 0)
    assert result["strong_m_metric_graph"] is True
    code, result = run(capsys, "metric", "rank", path, '[[["edge", "k0", "1/3"], 2]]', "--refine", "2")
    assert code == cli.EXIT_OK
    assert result["rank"] == 2


def test_metric_real_rank(capsys, tmp_path: pathlib.Path):
    _, graph = run(capsys, "gen", "example2", "--base", "banana", "--size", "2")
    path = write(tmp_path, "g.json", graph)
    code, result = run(capsys, "metric", "rank", path, '[[["vertex", "v"], 1]]', "--real")
    assert code == cli.EXIT_OK
    assert result["rank"] == 1


def test_fuzz_command(capsys):
    code, report = run(capsys, "fuzz", "--seed", "1", "--trials", "3", "--properties", "gsa_constraints,parity")
    assert code == cli.EXIT_OK
    assert report["ok"] is True
    assert report["passed"] == {"gsa_constraints": 3, "parity": 3}


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "example1", "--g", "2", "--s", "2", "--a", "0"],
        ["info", "/does/not/exist.json"],
        ["fuzz", "--trials", "1", "--properties", "nope"],
    ],
)
def test_domain_errors(capsys, argv: list[str]):
    assert cli.main(argv) == cli.EXIT_ERROR
    assert "error" in capsys.readouterr().err


def test_bad_divisor(capsys, tripod_file: str):
    assert cli.main(["rank", tripod_file, "{not json"]) == cli.EXIT_ERROR
    assert cli.main(["rank", tripod_file, '{"x": 1}']) == cli.EXIT_ERROR
    assert cli.main(["rank", tripod_file, '{"u": 1}', "--real"]) == cli.EXIT_ERROR


def test_usage_errors_exit_with_one(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == cli.EXIT_ERROR


def test_budget_exceeded(capsys, monkeypatch, tmp_path: pathlib.Path):
    _, graph = run(capsys, "gen", "example2", "--base", "cycle", "--size", "3")
    path = write(tmp_path, "g.json", graph)
    monkeypatch.setenv(BUDGET_ENV_VAR, "1")
    assert cli.main(["rank", path, '{"v": 1}']) == cli.EXIT_BUDGET
    assert "budget" in capsys.readouterr().err


def test_info_on_empty_real_locus(capsys, tmp_path: pathlib.Path):
    _, graph = run(capsys, "gen", "example1", "--g", "3", "--s", "0", "--a", "1")
    code, info = run(capsys, "info", write(tmp_path, "g.json", graph))
    assert code == cli.EXIT_OK
    assert (info["genus"], info["s"], info["a"]) == (3, 0, 1)
    assert info["real_locus_components"] == []


def test_rank_on_a_large_cycle(capsys, tmp_path: pathlib.Path):
    path = write(tmp_path, "cycle.json", serialize(identity_structure(cycle_graph(1100))))
    code, result = run(capsys, "rank", path, '{"c0": 1}')
    assert code == cli.EXIT_OK
    assert result["rank"] == 0


def test_undecodable_file(capsys, tmp_path: pathlib.Path):
    path = tmp_path / "bad.json"
    path.write_bytes(b'{"vertices": ["\xff"]}')
    assert cli.main(["info", str(path)]) == cli.EXIT_ERROR
    assert "error" in capsys.readouterr().err


def test_metric_g12_reports_rank(capsys, tmp_path: pathlib.Path):
    _, graph = run(capsys, "gen", "example1", "--g", "1", "--s", "2", "--a", "0")
    code, result = run(capsys, "metric", "g12", write(tmp_path, "g.json", graph))
    assert code == cli.EXIT_OK
    assert result == {"g12": [[["vertex", "v1"], 2]], "rank": 1}
