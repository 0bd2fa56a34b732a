# dataset_test.py
# MIT License 2026
import numpy as np
import pytest

from tests.utils import make_dataset, make_rows
from weedmap.core.classes import WeedClass
from weedmap.exceptions import SchemaMismatch
from weedmap.features.parcel import ParcelFeatureVector
from weedmap.learn.dataset import Dataset
from weedmap.learn.rng import derive_rng

MO, TL, CS, NP = WeedClass


def test_dataset_accessors():
    data = make_dataset([MO, NP, MO], np.arange(6).reshape(3, 2))
    assert len(data) == 3
    assert data.schema == ("f0", "f1")
    assert data.class_counts == {MO: 2, TL: 0, CS: 0, NP: 1}
    assert data.present_classes == [MO, NP]
    assert list(data.labels()) == [0, 3, 0]
    assert list(data.indices_of(MO)) == [0, 2]
    assert data.matrix().shape == (3, 2)
    assert data.onehot()[1].tolist() == [0, 0, 0, 1]


def test_subset_keeps_order():
    data = make_dataset([MO, TL, CS, NP], np.eye(4))
    subset = data.subset([3, 1])
    assert [row.parcel_id for row in subset.rows] == ["P0003", "P0001"]


def test_empty_dataset():
    with pytest.raises(SchemaMismatch):
        Dataset([])
    empty = Dataset([], ("a", "b"))
    assert empty.matrix().shape == (0, 2)


def test_rows_must_share_schema():
    rows = make_rows([MO], np.zeros((1, 2))) + [ParcelFeatureVector("X", MO, ("a", "b"), [0.0, 0.0])]
    with pytest.raises(SchemaMismatch):
        Dataset(rows)


def test_rows_must_be_labeled():
    rows = make_rows([MO], np.zeros((1, 2))) + make_rows([None], np.zeros((1, 2)), prefix="U")
    with pytest.raises(SchemaMismatch):
        Dataset(rows)


def test_derived_streams_are_independent_of_order():
    a = derive_rng(42, "bootstrap", 3).integers(0, 1000, 5)
    derive_rng(42, "bootstrap", 2).integers(0, 1000, 5)
    b = derive_rng(42, "bootstrap", 3).integers(0, 1000, 5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, derive_rng(42, "bootstrap", 4).integers(0, 1000, 5))
    assert not np.array_equal(a, derive_rng(42, "split", 3).integers(0, 1000, 5))
    assert not np.array_equal(a, derive_rng(43, "bootstrap", 3).integers(0, 1000, 5))
