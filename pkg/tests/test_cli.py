import json
from pathlib import Path

import pytest

from zinbiel import cli, io
from zinbiel.fixtures import crossed_fixtures, idempotent_line

DATA = Path(__file__).resolve().parent.parent / "data"
PLANE = str(DATA / "nilpotent_plane.json")
TWISTED = str(DATA / "twisted_extension.json")
KERNEL = str(DATA / "kernel_extension.json")


def run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = cli.main(argv + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_check_plane_passes(tmp_path):
    code, text = run(["check", "zinbiel", PLANE], tmp_path)
    assert code == 0
    assert json.loads(text)["status"] == "pass"


def test_check_idempotent_fails_with_location(tmp_path):
    p = tmp_path / "idem.json"
    p.write_text(io.dump_object(idempotent_line()))
    code, text = run(["check", "zinbiel", str(p)], tmp_path)
    assert code == 1
    viol = json.loads(text)["report"]["conditions"]["zinbiel"]["violations"]
    assert viol == [{"tuple": [0, 0, 0], "residual": ["-1"]}]


def test_cohomology_report(tmp_path):
    code, text = run(["cohomology", "--degree", "3", PLANE, "regular"], tmp_path)
    data = json.loads(text)
    assert code == 0
    assert (data["cocycles"], data["coboundaries"], data["dim"]) == (6, 5, 1)


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "algebra", "dims": {"n": 2}, "tensors": {
        "product": [{"indices": [0, 0, 1], "value": "1/0"}]}}))
    assert cli.main(["check", "zinbiel", str(bad)]) == 2
    assert "malformed rational" in capsys.readouterr().err
    bad.write_text(json.dumps({"kind": "algebra", "dims": {"n": 2}, "tensors": {
        "product": [{"indices": [5, 0, 1], "value": "1"}]}}))
    assert cli.main(["check", "zinbiel", str(bad)]) == 2
    assert "index out of range" in capsys.readouterr().err
    assert cli.main(["check", "zinbiel", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["check", "zinf", PLANE]) == 2
    assert cli.main(["construct", "random-cocycle", PLANE, "regular"]) == 2


def test_non_zinbiel_cohomology_is_checker_failure(tmp_path):
    p = tmp_path / "idem.json"
    p.write_text(io.dump_object(idempotent_line()))
    code, text = run(["cohomology", "--degree", "2", str(p), "regular"], tmp_path)
    assert code == 1 and json.loads(text)["status"] == "fail"


def test_xi_sections_and_same_class(tmp_path):
    c1, _ = run(["xi", TWISTED, "--sections", "pivot"], tmp_path, "p.json")
    c2, _ = run(["xi", TWISTED, "--sections", "shifted"], tmp_path, "s.json")
    assert c1 == c2 == 0
    code, text = run(["same-class", str(tmp_path / "p.json"), str(tmp_path / "s.json")], tmp_path)
    assert code == 0 and json.loads(text)["same_class"] is True


def test_same_class_false(tmp_path):
    run(["xi", TWISTED], tmp_path, "t.json")
    data = json.loads((tmp_path / "t.json").read_text())
    zero = io.emit_data(io.loads(json.dumps(data["representative"])))
    zero["tensors"]["values"] = []
    data["representative"] = zero
    (tmp_path / "z.json").write_text(io.dumps(data))
    code, text = run(["same-class", str(tmp_path / "t.json"), str(tmp_path / "z.json")], tmp_path)
    assert code == 1 and json.loads(text)["same_class"] is False


def test_twist_changes_the_class(tmp_path):
    # both extensions induce the same (Z, M), so their classes are comparable
    run(["xi", TWISTED], tmp_path, "t.json")
    run(["xi", KERNEL], tmp_path, "k.json")
    code, text = run(["same-class", str(tmp_path / "t.json"), str(tmp_path / "k.json")], tmp_path)
    assert code == 1 and json.loads(text)["same_class"] is False


def test_same_class_context_mismatch(tmp_path, capsys):
    other = tmp_path / "e2.json"
    other.write_text(io.dump_object(crossed_fixtures()["image-e2-kernel"], kind="extension"))
    run(["xi", TWISTED], tmp_path, "t.json")
    run(["xi", str(other)], tmp_path, "o.json")
    code = cli.main(["same-class", str(tmp_path / "t.json"), str(tmp_path / "o.json")])
    assert code == 2
    assert "context mismatch" in capsys.readouterr().err


def test_construct_and_convert_chain(tmp_path):
    assert run(["construct", "shuffle", "3"], tmp_path, "s3.json")[0] == 0
    s3 = str(tmp_path / "s3.json")
    assert run(["construct", "random-cocycle", s3, "regular", "--seed", "4"], tmp_path, "c.json")[0] == 0
    assert json.loads((tmp_path / "c.json").read_text())["seed"] == 4
    assert run(["construct", "skeletal", s3, "regular", str(tmp_path / "c.json")], tmp_path, "L.json")[0] == 0
    L = str(tmp_path / "L.json")
    code, text = run(["check", "zinf", L], tmp_path)
    assert code == 0 and json.loads(text)["properties"] == {"skeletal": True, "strict": False}
    assert run(["convert", "T", L], tmp_path, "T.json")[0] == 0
    assert run(["convert", "S", str(tmp_path / "T.json")], tmp_path, "S.json")[0] == 0
    assert (tmp_path / "S.json").read_bytes() == Path(L).read_bytes()
    assert run(["convert", "dendrify", L], tmp_path, "D.json")[0] == 0
    assert run(["convert", "totalize", str(tmp_path / "D.json")], tmp_path, "A.json")[0] == 0
    assert run(["construct", "strict", TWISTED], tmp_path, "strict.json")[0] == 0
    code, _ = run(["check", "cinf", str(tmp_path / "strict.json")], tmp_path)
    assert code == 2  # a zinf file is not an ainf file


def test_determinism(tmp_path):
    argv = ["construct", "random-cocycle", PLANE, "regular", "--seed", "3"]
    run(argv, tmp_path, "a.json")
    run(argv, tmp_path, "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_stdout_output(capsys):
    assert cli.main(["construct", "shuffle", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "algebra"


def test_argparse_rejects_bad_degree():
    with pytest.raises(SystemExit) as err:
        cli.main(["cohomology", "--degree", "4", PLANE, "regular"])
    assert err.value.code == 2
