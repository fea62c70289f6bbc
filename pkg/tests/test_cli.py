import io
import json

import pytest

from lowrank_boxqp.cli import main
from lowrank_boxqp.serialize import load_instance
from lowrank_boxqp.solver import solve


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


XY = '{"n": 2, "Q": [[0, 1], [0, 0]], "q": [0, 0], "lower": [-1, -1], "upper": [1, 1]}'
ZERO = '{"n": 2, "Q": [[0, 0], [0, 0]], "lower": [-1, -1], "upper": [1, 1]}'


def run(argv, **kw):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err, **kw)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("cmd", ["solve", "oracle"])
def test_solve_and_oracle(tmp_path, cmd):
    code, out, _ = run([cmd, _write(tmp_path, "xy.json", XY)])
    assert code == 0 and "f* = 1" in out
    code, out, _ = run([cmd, _write(tmp_path, "z.json", ZERO)])
    assert code == 0 and "f* = 0" in out


@pytest.mark.parametrize("cmd", ["solve", "oracle", "compare"])
def test_malformed_exit_2(tmp_path, cmd):
    code, _, err = run([cmd, _write(tmp_path, "bad.json", '{"n": 2, "Q": [[1]]')])
    assert code == 2 and "error" in err


def test_missing_file_exit_2(tmp_path):
    code, _, err = run(["solve", str(tmp_path / "nope.json")])
    assert code == 2


def test_bound_violation_exit_2(tmp_path):
    path = _write(tmp_path, "b.json", '{"n":1,"Q":[[1]],"lower":[2],"upper":[1]}')
    code, _, err = run(["solve", path])
    assert code == 2 and "bound violation at index 0" in err


def test_structured_output(tmp_path):
    code, out, _ = run(["solve", _write(tmp_path, "xy.json", XY), "--format", "structured"])
    doc = json.loads(out)
    assert doc["f_star"] == 1 and len(doc["x_star"]) == 2
    assert doc["stats"]["faces_enumerated"] == 9 and doc["stats"]["rank_used"] == 1


def test_human_report_fields(tmp_path):
    _, out, _ = run(["solve", _write(tmp_path, "xy.json", XY), "--parallel", "--min-rank"])
    for key in ("f* =", "x* =", "rank used", "faces enumerated", "LPs solved", "wall time"):
        assert key in out


def test_float_mode(tmp_path):
    code, out, _ = run(["solve", _write(tmp_path, "xy.json", XY), "--mode", "float",
                        "--format", "structured"])
    assert code == 0 and json.loads(out)["f_star"] == 1.0


def test_oracle_cap_exit_3(tmp_path):
    path = str(tmp_path / "big.json")
    assert run(["gen", "11", "1", "5", "-o", path])[0] == 0
    assert run(["oracle", path])[0] == 3
    assert run(["compare", path])[0] == 3
    assert run(["solve", path])[0] == 0


def test_compare_agree(tmp_path):
    code, out, _ = run(["compare", _write(tmp_path, "xy.json", XY)])
    assert code == 0 and out.strip() == "AGREE f*=1"


def test_compare_random_corpus():
    code, out, _ = run(["compare", "--random", "n=4", "rank=2", "count=50", "seed=1"])
    assert code == 0 and "50/50 agreements" in out


def test_compare_random_positional_float():
    code, out, _ = run(["compare", "--random", "3", "1", "5", "2", "--mode", "float"])
    assert code == 0 and "5/5" in out


def test_compare_corrupted_solver(tmp_path):
    def corrupted(inst, opts):
        sol = solve(inst, opts)
        return type(sol)(sol.f_star - 1, sol.x_star, sol.stats)

    code, out, _ = run(["compare", _write(tmp_path, "xy.json", XY)], solver=corrupted)
    assert code == 1 and "DISAGREE" in out and "[oracle]" in out


def test_compare_float_tolerance(tmp_path):
    def nudged(inst, opts):
        sol = solve(inst, opts)
        return type(sol)(sol.f_star + 1e-9, sol.x_star, sol.stats)

    path = _write(tmp_path, "xy.json", XY)
    assert run(["compare", path, "--mode", "float"], solver=nudged)[0] == 0
    assert run(["compare", path, "--mode", "float", "--tol", "1e-12"], solver=nudged)[0] == 1


def test_compare_needs_input():
    assert run(["compare"])[0] == 2


@pytest.mark.parametrize("G,total", [
    ("[[1,0],[0,1]]", 9),
    ("[[1,2],[0,0]]", 3),
    ("[[1,1,1,1,1],[1,2,3,4,5]]", 21),
])
def test_count_faces(G, total):
    code, out, _ = run(["count-faces", "-G", G])
    assert code == 0 and f"total: {total}" in out


def test_count_faces_structured_and_instance(tmp_path):
    _, out, _ = run(["count-faces", "-G", "[[1,0],[0,1]]", "--format", "structured"])
    assert json.loads(out) == {"by_zero_count": {"0": 4, "1": 4, "2": 1}, "total": 9}
    code, out, _ = run(["count-faces", _write(tmp_path, "xy.json", XY)])
    assert code == 0 and "total: 9" in out


def test_count_faces_bad_matrix():
    assert run(["count-faces", "-G", "[[1,0],[1]]"])[0] == 2


def test_gen_reproducible(tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert run(["gen", "4", "2", "9", "-o", a])[0] == 0
    assert run(["gen", "4", "2", "--seed", "9", "-o", b])[0] == 0
    assert open(a).read() == open(b).read()
    inst = load_instance(a)
    assert inst.n == 4


def test_gen_impossible_rank():
    code, _, err = run(["gen", "4", "5", "1"])
    assert code == 2 and "impossible rank" in err


def test_rational_file(tmp_path):
    path = _write(tmp_path, "r.json",
                  '{"n":1,"Q":[["-1/2"]],"q":["1/3"],"lower":[0],"upper":[1]}')
    code, out, _ = run(["solve", path, "--format", "structured"])
    # -x^2/2 + x/3 peaks at x = 1/3 with value 1/18
    assert json.loads(out)["f_star"] == "1/18"
    assert json.loads(out)["x_star"] == ["1/3"]
    assert run(["solve", path, "--mode", "float"])[0] == 2
