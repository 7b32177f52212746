import json

import pytest

from brauerlab import admissible as adm
from brauerlab.cli import run


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("BRAUERLAB_CACHE", str(tmp_path / "cache"))
    yield tmp_path / "cache"
    adm.set_orbit_store(None)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rank_json(capsys):
    code, out, _ = call(capsys, "rank", "E6", "--json")
    assert code == 0
    assert json.loads(out) == {"type": "E6", "rank": 1440585}


def test_reduce_json(capsys):
    code, out, _ = call(capsys, "reduce", "E6", "e2 e3 e6 e5 e4 e3 e2 e4 e5 e6", "--json")
    assert code == 0
    assert out.strip() == '{"delta":1,"tokens":["e2","e3","e6"]}'


def test_tables_e7(capsys):
    code, out, _ = call(capsys, "tables", "E7")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
    code, out, _ = call(capsys, "tables", "E7", "--json")
    cells = json.loads(out)["cells"]
    for column in ("Y", "B_Y perp", "M_Y", "|(WB_Y)^0|"):
        assert sum(c["column"] == column and c["pass"] for c in cells) == 5


def test_tables_unknown_type(capsys):
    code, _, err = call(capsys, "tables", "A4")
    assert code == 1 and "no reference table" in err


def test_cache_is_written_and_optional(capsys, cache_dir):
    call(capsys, "orbits", "E6")
    assert sorted(p.name for p in cache_dir.iterdir()) == ["E6_0.json", "E6_1.json", "E6_2.json", "E6_4.json"]
    for p in cache_dir.iterdir():
        p.unlink()
    code, _, _ = call(capsys, "orbits", "E6", "--no-cache")
    assert code == 0 and not any(cache_dir.iterdir())


def test_orbits_output_is_stable(capsys):
    first = call(capsys, "orbits", "E6", "--json")
    second = call(capsys, "orbits", "E6", "--json")
    assert first == second
    rows = json.loads(first[1])["orbits"]
    assert [r["orbit"] for r in rows] == [1, 36, 270, 135]


def test_closure_and_action(capsys):
    code, out, _ = call(capsys, "closure", "E6", "a2", "a3", "a6", "--json")
    assert code == 0 and len(json.loads(out)["closure"]) == 4
    code, out, _ = call(capsys, "action", "E6", "e4 r2 r5 e3 e4 e5 e1 e3 e4 e6", "--json")
    assert json.loads(out)["image"] == [[0, 0, 0, 1, 0, 0], [1, 1, 2, 2, 1, 0]]
    code, out, _ = call(capsys, "action", "E6", "r5", "--set", "a6", "--json")
    assert json.loads(out)["image"] == [[0, 0, 0, 0, 1, 1]]


def test_ab_and_decompose(capsys):
    code, out, _ = call(capsys, "ab", "E6", "a4", "1,1,2,2,1,0", "--json")
    data = json.loads(out)
    assert code == 0 and data["height"] == 2 and data["Y"] == [4, 6]
    word = " ".join(data["aB"]["tokens"])
    code, out, _ = call(capsys, "decompose", "E6", word, "--json")
    form = json.loads(out)
    assert form["B"] == [[0, 0, 0, 1, 0, 0], [1, 1, 2, 2, 1, 0]] and form["h"] == []


def test_multiply(capsys):
    code, out, _ = call(capsys, "multiply", "E6", "e6", "e6", "--json")
    assert code == 0 and json.loads(out)["delta"] == 2
    _, x, _ = call(capsys, "decompose", "E6", "e6 r5", "--json")
    code, out, _ = call(capsys, "multiply", "E6", x.strip(), "1", "--json")
    assert json.loads(out) == json.loads(x)


def test_equiv(capsys):
    code, out, _ = call(capsys, "equiv", "E6", "e1 e4", "e4 e1", "--json")
    assert code == 0 and json.loads(out)["equivalent"]
    code, out, _ = call(capsys, "equiv", "E6", "r1 r3", "r3 r1")
    assert code == 0 and "different elements" in out
    code, out, _ = call(capsys, "equiv", "E6", "e1 e1", "e1")
    assert code == 0 and "delta^1" in out


def test_roots(capsys):
    code, out, _ = call(capsys, "roots", "E8", "--json")
    assert code == 0 and len(json.loads(out)["roots"]) == 120


@pytest.mark.parametrize("argv", [
    ["rank", "E9"],
    ["reduce", "E6", "e7"],
    ["reduce", "E6", "x1"],
    ["closure", "E6", "a3", "a4"],
    ["ab", "E6", "a3", "a4"],
    ["decompose", "A3", "e1 r2"],
    ["bogus", "E6"],
    ["reduce", "E6", "e1", "--caps-visited", "0"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 1


def test_caps_exhaustion_exits_2(capsys):
    code, _, err = call(capsys, "reduce", "E6", "e1 r4 e6 r3 r4 r2 r5 e4 r1 r2 r3 r4",
                        "--caps-visited", "2", "--caps-extra-length", "1")
    assert code == 2 and "not certified" in err


def test_fuzz_is_reproducible(capsys):
    a = call(capsys, "fuzz", "A4", "--count", "150", "--seed", "5", "--json")
    b = call(capsys, "fuzz", "A4", "--count", "150", "--seed", "5", "--json")
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["failures"] == 0
    c = call(capsys, "fuzz", "A4", "--count", "150", "--seed", "5", "--json", "--threads", "2")
    assert c[1] == a[1]


def test_fuzz_e6(capsys):
    code, out, _ = call(capsys, "fuzz", "E6", "--count", "20", "--seed", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["failures"] == 0 and data["caps_exhausted"] == 0


def test_help_exits_0(capsys):
    assert run(["--help"]) == 0


def test_tables_mismatch_exits_nonzero(capsys, monkeypatch):
    from brauerlab import cli

    broken = {k: dict(v) for k, v in cli.REFERENCE.items()}
    broken["E6"][2] = ("A3", "A2", 21, 15)
    monkeypatch.setattr(cli, "REFERENCE", broken)
    code, out, _ = call(capsys, "tables", "E6")
    assert code == 1
    assert [line for line in out.splitlines() if line.startswith("FAIL")] == \
        [line for line in out.splitlines() if "|(WB_Y)^0|" in line and "20" in line]
