import json
import subprocess
import sys

import pytest

from hecke_branching.cli import main
from hecke_branching.hall import PBWVector
from hecke_branching.multipartition import MultiPartition
from hecke_branching.multiseg import Multisegment

from oracles import parse_pbw_expression


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_crystal_apply_example(capsys):
    code, out, _ = run(capsys, "crystal", "apply", "--e", "3", "--realization", "uglov:1,2", "--ops", "f1,f2",
                       '{"components":[[],[]]}')
    assert code == 0 and out.strip() == "((2),∅)"


def test_embed_example(capsys):
    code, out, _ = run(capsys, "embed", "fv", "--e", "4", "--charges", "0,1", '{"components":[[2,1],[1]]}')
    assert code == 0
    got = sorted(out.strip()[1:-1].split(","))
    assert got == sorted("[0;2],[3;1],[1;1]".split(","))


def test_hall_product_example(capsys):
    code, out, _ = run(capsys, "hall", "product", "--e", "3", "f1", "f2", "--format", "json")
    assert code == 0
    vec = PBWVector.from_json(json.loads(out))
    got = {}
    for psi, c in vec.items():
        (exp, one), = c.terms.items()
        assert one == 1
        got[tuple(sorted((s.head, s.length) for s in psi.segments()))] = exp
    assert got == parse_pbw_expression("E_{[1;2]} + v E_{[1;1],[2;1]}")


def test_exit_codes(capsys):
    assert run(capsys, "flotw", "check", "--e", "2", "--charges", "0", '{"components":[[1,1]]}')[0] == 0
    code, _, err = run(capsys, "embed", "fv", "--e", "2", "--charges", "0", '{"components":[[1,1]]}')
    assert code == 1 and "domain error" in err
    code, _, err = run(capsys, "embed", "fv", "--e", "2", "--charges", "0", '{"components":[[1,1]')
    assert code == 2 and "malformed JSON" in err
    code, _, err = run(capsys, "embed", "fv", "--e", "2", "--charges", "0", '{"components":[["x"]]}')
    assert code == 2 and "components[0]" in err
    code, _, err = run(capsys, "branch", "socle", "--e", "3", "--residue", "0", '{"segments":[{"head":"a","len":1}]}')
    assert code == 2 and "segments[0].head" in err
    assert run(capsys, "crystal")[0] == 2
    assert run(capsys, "hall", "product", "--e", "3", "f1", "--format", "dot")[0] == 2


def test_flotw_check_and_list(capsys):
    _, out, _ = run(capsys, "flotw", "check", "--e", "4", "--charges", "0,1", '{"components":[[2,1],[1]]}')
    assert out.strip() == "true"
    _, out, _ = run(capsys, "flotw", "list", "--e", "2", "--charges", "0", "--n", "2", "--format", "json")
    assert json.loads(out) == [{"components": [[2]]}]


def test_kleshchev_check(capsys):
    for lam, want in (([2], "true"), ([1, 1], "true"), ([4], "false"), ([1, 1, 1, 1], "true")):
        _, out, _ = run(capsys, "kleshchev", "check", "--e", "3", "--charges", "1",
                        json.dumps({"components": [lam]}))
        assert out.strip() == want


def test_iso_commands(capsys):
    _, out, _ = run(capsys, "iso", "tau", "--e", "4", "--charges", "0,1", '{"components":[[2,1],[1]]}',
                    "--format", "json")
    assert json.loads(out) == {"lam": {"components": [[1], [2, 1]]}, "charges": [1, 4]}
    _, out, _ = run(capsys, "iso", "transport", "--e", "4", "--src", "uglov:0,1", "--dst", "uglov:1,4",
                    '{"components":[[2,1],[1]]}')
    assert out.strip() == "((1),(2,1))"
    _, out, _ = run(capsys, "iso", "transport", "--e", "3", "--src", "uglov:1", "--dst", "kleshchev:1",
                    '{"components":[[2]]}')
    assert out.strip() == "(2)"


def test_embed_inverse(capsys):
    seg22 = json.dumps(Multisegment.from_tails(3, [(2, 2)]).to_json())
    _, out, _ = run(capsys, "embed", "inverse-check", "--e", "3", "--charges", "1", seg22)
    assert out.startswith("true")
    bad = json.dumps(Multisegment.from_tails(3, [(1, 1), (2, 1)]).to_json())
    _, out, _ = run(capsys, "embed", "inverse-check", "--e", "3", "--charges", "1", bad)
    assert out.strip() == "false"


def test_hall_polynomial_and_canonical(capsys):
    s = json.dumps({"segments": [{"head": 1, "len": 1, "mult": 2}]})
    g = json.dumps({"segments": [{"head": 1, "len": 1}]})
    _, out, _ = run(capsys, "hall", "polynomial", "--e", "3", s, g, g, "--format", "json")
    assert json.loads(out) == [1, 1]
    code, out, _ = run(capsys, "hall", "canonical", "--e", "3", "--alpha", "0,1,1", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 2
    assert run(capsys, "hall", "canonical", "--e", "3", "--alpha", "0,1")[0] == 2


def test_hall_decomp(capsys):
    psi = json.dumps(Multisegment.from_tails(3, [(2, 2)]).to_json())
    _, out, _ = run(capsys, "hall", "decomp", "--e", "3", "--convention", "tail", psi)
    assert sorted(out.strip().splitlines()) == sorted(["u_{(2;2]}: 1", "u_{(1;1],(1;2]}: 1"])


def test_branch_commands(capsys):
    psi = json.dumps(Multisegment.from_tails(3, [(2, 2)]).to_json())
    _, out, _ = run(capsys, "branch", "socle", "--e", "3", "--residue", "2", "--convention", "tail", psi)
    assert out.strip() == "{(1;1]}"
    _, out, _ = run(capsys, "branch", "profile", "--e", "3", psi, "--format", "json")
    data = json.loads(out)
    assert data["0"] is None and data["1"] is None and Multisegment.from_json(data["2"]).size == 1
    _, out, _ = run(capsys, "branch", "translate", "--e", "3", "--src", "uglov:1,2", "--dst", "mseg:tail",
                    "--convention", "tail", '{"components":[[2],[]]}')
    assert out.strip() == "{(2;2]}"


def test_graph_formats(capsys):
    _, out, _ = run(capsys, "crystal", "graph", "--e", "2", "--realization", "uglov:0", "--depth", "2",
                    "--format", "json")
    data = json.loads(out)
    assert data["edges"] == [[0, 0, 1], [1, 1, 2]]
    assert [MultiPartition.from_json(v).rank for v in data["vertices"]] == [0, 1, 2]
    _, dot, _ = run(capsys, "crystal", "graph", "--e", "2", "--realization", "uglov:0", "--depth", "2",
                    "--format", "dot")
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")


def test_crystal_string(capsys):
    code, out, _ = run(capsys, "crystal", "string", "--e", "3", "--realization", "uglov:1,2",
                       '{"components":[[2],[]]}', "--format", "json")
    assert code == 0 and isinstance(json.loads(out), dict)


@pytest.mark.parametrize(
    "argv",
    [
        ["crystal", "apply", "--e", "3", "--realization", "uglov:1,2", "--ops", "f1,f2,f0", '{"components":[[],[]]}'],
        ["embed", "fv", "--e", "4", "--charges", "0,1", '{"components":[[2,1],[1]]}'],
        ["hall", "product", "--e", "3", "f0", "f1", "f2"],
        ["flotw", "list", "--e", "3", "--charges", "0,1", "--n", "3"],
    ],
)
def test_json_roundtrip_and_determinism(capsys, argv):
    _, a, _ = run(capsys, *argv, "--format", "json")
    _, b, _ = run(capsys, *argv, "--format", "json")
    assert a == b
    data = json.loads(a)
    readers = {"crystal": MultiPartition.from_json, "embed": lambda d: Multisegment.from_json(d),
               "hall": PBWVector.from_json, "flotw": lambda d: [MultiPartition.from_json(x) for x in d]}
    obj = readers[argv[0]](data)
    again = [x.to_json() for x in obj] if isinstance(obj, list) else obj.to_json()
    assert json.dumps(again, sort_keys=True) == json.dumps(data, sort_keys=True)


def test_files_in_and_out(tmp_path, capsys):
    src = tmp_path / "in.json"
    dst = tmp_path / "out.txt"
    src.write_text('{"components":[[2,1],[1]]}')
    code, out, _ = run(capsys, "embed", "fv", "--e", "4", "--charges", "0,1", "--in", str(src), "--out", str(dst))
    assert code == 0 and out == "" and dst.read_text().startswith("{")


def test_stdin_and_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hecke_branching.cli", "flotw", "check", "--e", "2", "--charges", "0"],
        input='{"components":[[2]]}', capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "true"


def test_cache_dir(tmp_path, capsys):
    from hecke_branching.hall.counting import structure_constants

    structure_constants.cache_clear()
    code, _, _ = run(capsys, "hall", "product", "--e", "2", "f0", "f1", "--cache-dir", str(tmp_path))
    assert code == 0 and any(tmp_path.iterdir())
