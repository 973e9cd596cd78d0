import json

import numpy as np
import pytest
from hypothesis import given

from cogindep.core import Frame, categorical, make_mass
from cogindep.datagen import random_masses
from cogindep.io import (
    FormatError,
    dataset_record,
    parse_record,
    read_dataset,
    read_record,
    write_dataset,
    write_mass,
    write_text_atomic,
)

from conftest import masses

F3 = Frame.of_size(3)


@given(masses())
def test_mass_roundtrip(m):
    frame, parsed, is_dataset = parse_record(json.loads(json.dumps(m.to_dict())))
    assert not is_dataset
    assert parsed == [m]


def test_dataset_roundtrip(tmp_path):
    ms = random_masses(F3, 20, np.random.default_rng(0))
    path = tmp_path / "d.json"
    write_dataset(path, ms, "S1")
    assert read_dataset(path) == ms
    assert json.loads(path.read_text())["source"] == "S1"


def test_subsets_are_index_lists(tmp_path):
    path = tmp_path / "m.json"
    write_mass(path, make_mass(F3, {0b101: 1.0}))
    assert json.loads(path.read_text())["focals"] == [{"set": [0, 2], "mass": 1.0}]


def test_bad_records(tmp_path):
    with pytest.raises(FormatError):
        parse_record({"focals": []})
    with pytest.raises(FormatError):
        parse_record({"frame": ["a"]})
    rec = dataset_record([categorical(F3, 1), categorical(F3, 2)])
    rec["masses"][1]["object"] = 5
    with pytest.raises(FormatError):
        parse_record(rec)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        read_record(bad)


def test_atomic_write_leaves_no_temp_files(tmp_path):
    target = tmp_path / "out.txt"
    write_text_atomic(target, "a")
    write_text_atomic(target, "b")
    assert target.read_text() == "b"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]
