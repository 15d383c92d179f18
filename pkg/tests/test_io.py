import json

import pytest
from hypothesis import given, strategies as st

from zinbiel import io
from zinbiel.algebra import check_zinbiel, nilpotent_plane, regular_bimodule, truncated_shuffle
from zinbiel.cohomology import random_cocycle
from zinbiel.crossed import strict_from_crossed
from zinbiel.dendriform import dendrify, rb_search_fixture, symmetrize_zinf
from zinbiel.fixtures import crossed_fixtures, general_zinf
from zinbiel.twovect import functor_T
from zinbiel.zinf import ZinfMorphism, identity_zinf_morphism

PLANE_TEXT = json.dumps({
    "kind": "algebra", "dims": {"n": 2},
    "tensors": {"product": [{"indices": [0, 0, 1], "value": "1"}]},
})


def _objects():
    L = general_zinf(0)
    A, R = rb_search_fixture()
    s3 = truncated_shuffle(3)
    return [
        ("algebra", nilpotent_plane()),
        ("bimodule", regular_bimodule(s3)),
        ("cochain", random_cocycle(s3, regular_bimodule(s3), 3, 1)),
        ("zinf", L),
        ("zinf-morphism", identity_zinf_morphism(L)),
        ("crossed", crossed_fixtures()["kernel-shuffle4"]),
        ("ainf", symmetrize_zinf(L)),
        ("dend", dendrify(L)),
        ("rb", R),
        ("zinbiel2", functor_T(strict_from_crossed(crossed_fixtures()["image-e2-kernel"]))),
    ]


def test_plane_file():
    a = io.to_object(io.loads(PLANE_TEXT))
    assert a == nilpotent_plane()
    assert check_zinbiel(a).passed


@pytest.mark.parametrize("kind,obj", _objects(), ids=[k for k, _ in _objects()])
def test_round_trip(kind, obj):
    text = io.dump_object(obj)
    sf = io.loads(text)
    assert sf.kind == kind
    assert io.to_object(sf) == obj
    # parse . emit . parse = parse
    assert io.emit(io.loads(io.emit(sf))) == io.emit(sf) == text


def test_extension_kind_preserved():
    X = crossed_fixtures()["twisted-shuffle4"]
    sf = io.loads(io.dump_object(X, kind="extension"))
    assert sf.kind == "extension" and io.to_object(sf) == X


def test_seed_recorded():
    s3 = truncated_shuffle(3)
    text = io.dump_object(random_cocycle(s3, regular_bimodule(s3), 3, 9), seed=9)
    assert io.loads(text).seed == 9


def _with_entry(value=None, indices=None, **extra):
    entry = {"indices": indices or [0, 0, 1], "value": "1" if value is None else value}
    entry.update(extra)
    return json.dumps({"kind": "algebra", "dims": {"n": 2},
                       "tensors": {"product": [entry]}})


@pytest.mark.parametrize("text,fragment", [
    (_with_entry(value="1/0"), "malformed rational"),
    (_with_entry(value="0.5"), "malformed rational"),
    (_with_entry(indices=[5, 0, 0]), "index out of range"),
    (_with_entry(indices=[0, 0]), "expected 3 integers"),
    (_with_entry(weight=1), "unknown key"),
    ('{"kind": "algebra", "dims": {"n": 2}, "tensors": {}}', "tensors.product: missing tensor"),
    ('{"kind": "loop", "dims": {}, "tensors": {}}', "unknown kind"),
    ('{"kind": "algebra", "dims": {"n": -1}, "tensors": {}}', "dims.n"),
    ('{"kind": "algebra", "dims": {"n": 2}, "tensors": {"product": []}, "extra": 1}', "unknown key"),
    ('{"kind": "algebra",', "line 1"),
])
def test_format_errors(text, fragment):
    with pytest.raises(io.FormatError) as err:
        io.loads(text)
    assert fragment in str(err.value)


def test_duplicate_entries_rejected():
    text = json.dumps({"kind": "algebra", "dims": {"n": 1}, "tensors": {"product": [
        {"indices": [0, 0, 0], "value": "1"}, {"indices": [0, 0, 0], "value": "2"}]}})
    with pytest.raises(io.FormatError, match="duplicate"):
        io.loads(text)


def test_field_path_in_message():
    with pytest.raises(io.FormatError) as err:
        io.loads(_with_entry(value="x"))
    assert str(err.value).startswith("tensors.product[0].value")


def test_load_checks_kind(tmp_path):
    p = tmp_path / "a.json"
    p.write_text(PLANE_TEXT)
    with pytest.raises(io.FormatError, match="expected zinf"):
        io.load(p, ("zinf",))


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
                          st.fractions(max_denominator=5).filter(lambda f: f != 0)),
                max_size=10, unique_by=lambda t: t[:3]))
def test_sparse_entries_round_trip(entries):
    data = {"kind": "algebra", "dims": {"n": 3}, "tensors": {"product": [
        {"indices": [i, j, k], "value": f"{v.numerator}/{v.denominator}"} for i, j, k, v in entries]}}
    sf = io.parse_data(data)
    again = io.loads(io.emit(sf))
    for i, j, k, v in entries:
        assert again.tensors["product"][i, j, k] == v
    assert io.emit(again) == io.emit(sf)


def test_emitted_entries_sorted():
    text = io.dump_object(truncated_shuffle(4))
    idx = [e["indices"] for e in json.loads(text)["tensors"]["product"]]
    assert idx == sorted(idx)
