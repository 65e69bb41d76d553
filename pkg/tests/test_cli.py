from __future__ import annotations

import json

import pytest

from gammaflag.cli import main
from gammaflag.ordering import format_ordering
from gammaflag.setcore import named_building_set, parse_building_set

from worked_examples import cyc5_orderings


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bset_selector(capsys):
    code, out, _ = run(capsys, "bset", "path:5")
    assert code == 0
    assert parse_building_set(out) == named_building_set("path:5")


def test_bset_from_graph_file(tmp_path, capsys):
    g = tmp_path / "tri.txt"
    g.write_text("n 3\n1 2\n2 3\n1 3\n")
    code, out, _ = run(capsys, "bset", str(g))
    assert code == 0 and parse_building_set(out) == named_building_set("kn:3")


def test_bset_file_round_trip(tmp_path, capsys):
    f = tmp_path / "b.txt"
    run(capsys, "bset", "cyc:5", "--out", str(f))
    code, out, _ = run(capsys, "bset", str(f), "--as-bset")
    assert code == 0 and out == f.read_text()


def test_bad_input_exit_code(tmp_path, capsys):
    assert run(capsys, "bset", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("n 3\n1 2\n2 3\n")
    code, _, err = run(capsys, "gamma", str(bad))
    assert code == 2 and "error" in err


@pytest.mark.parametrize("method", ["nested", "volodin", "complex"])
def test_gamma_methods(capsys, method):
    code, out, _ = run(capsys, "gamma", "kn:5", "--method", method)
    assert code == 0 and out.strip() == "(1, 22, 16)"


@pytest.mark.parametrize("how", ["lex", "random", "kn"])
def test_gamma_complex_orderings(capsys, how):
    code, out, _ = run(capsys, "gamma", "kn:4", "--method", "complex", "--ordering", how)
    assert code == 0 and out.strip() == "(1, 8)"


def test_gamma_mismatched_recipe(capsys):
    assert run(capsys, "gamma", "kn:4", "--method", "complex", "--ordering", "path")[0] == 2


def test_non_flag_exit_code(tmp_path, capsys):
    f = tmp_path / "nf.txt"
    f.write_text("n 3\n1 2 3\n")
    assert run(capsys, "gamma", str(f), "--method", "volodin")[0] == 1
    code, out, _ = run(capsys, "gamma", str(f), "--method", "nested")
    assert code == 0 and out.strip() == "(1, -1)"  # the triangle (simplex)


def test_ordering_find_and_verify(tmp_path, capsys):
    f = tmp_path / "o.txt"
    assert run(capsys, "ordering", "find", "cyc:5", "--out", str(f))[0] == 0
    code, out, _ = run(capsys, "ordering", "verify", "cyc:5", str(f))
    assert code == 0 and out.strip() == "valid"
    lines = f.read_text().splitlines()
    # move the final element to the front
    order_at = lines.index("order:")
    broken = lines[: order_at + 1] + [lines[-1]] + lines[order_at + 1:-1]
    f.write_text("\n".join(broken) + "\n")
    code, out, _ = run(capsys, "ordering", "verify", "cyc:5", str(f))
    assert code == 1 and out.startswith("invalid at index")


def test_complex_from_ordering_file(tmp_path, capsys):
    O1, _ = cyc5_orderings()
    f = tmp_path / "o1.txt"
    f.write_text(format_ordering(O1))
    code, out, _ = run(capsys, "complex", "cyc:5", "--ordering", "file", "--ordering-file", str(f))
    assert code == 0
    assert out.splitlines()[0] == "vertices 12"
    assert "edges 6" in out


def test_np_dot(capsys):
    code, out, _ = run(capsys, "np", "pn:5", "--dot")
    assert code == 0 and out.startswith("graph G {") and out.count("--") == 6
    assert run(capsys, "np", "xx:5")[0] == 2


def test_compare(tmp_path, capsys):
    O1, O2 = cyc5_orderings()
    files = []
    for i, O in enumerate((O1, O2, O1)):
        of = tmp_path / f"o{i}.txt"
        of.write_text(format_ordering(O))
        cf = tmp_path / f"c{i}.txt"
        run(capsys, "complex", "cyc:5", "--ordering", "file", "--ordering-file", str(of), "--out", str(cf))
        files.append(str(cf))
    code, out, _ = run(capsys, "compare", files[0], files[1])
    assert code == 0 and out.strip() == "NOT isomorphic"
    code, out, _ = run(capsys, "compare", files[0], files[2])
    assert code == 0 and out.startswith("isomorphic")


def test_verify_text_is_deterministic(capsys):
    first = run(capsys, "verify", "cyc:5")
    second = run(capsys, "verify", "cyc:5")
    assert first == second and first[0] == 0
    out = first[1]
    assert "gamma oracle:  (1, 12, 6)" in out
    assert "formula gamma: (1, 20, 30)" in out
    assert "diverges" in out


def test_verify_structured(capsys):
    code, out, _ = run(capsys, "verify", "kn:5", "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["agreement"] and data["gamma_oracle"] == [1, 22, 16]
    assert data["timings_ms"] == {}
    code, out, _ = run(capsys, "verify", "kn:4", "--format", "structured", "--timings")
    assert set(json.loads(out)["timings_ms"]) == {"oracle", "volodin", "complex"}


def test_ffk_command(capsys):
    assert run(capsys, "ffk", "(1, 1, 1)")[1].strip() == "fails"
    assert run(capsys, "ffk", "1 22 16")[1].strip() == "passes"
    assert run(capsys, "ffk", "(1, x)")[0] == 2


def test_usage_error(capsys):
    assert run(capsys, "nonsense")[0] == 2
