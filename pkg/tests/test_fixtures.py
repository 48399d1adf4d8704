import json

import pytest

from nonhalting.algebra import validate
from nonhalting.errors import InputError
from nonhalting.fixtures import diagnose, fixtures, paper_example, random_corpus
from nonhalting.loaders import document_kind, load, load_algebra, load_model, load_partition
from nonhalting.pfun import ConcreteModel


class TestBuiltinModels:
    def test_quasiv_diagnostics(self, quasiv, quasiv_algebra):
        d = diagnose(quasiv, quasiv_algebra)
        assert (d.listed, d.distinct, d.closure) == (13, 13, 14)
        assert d.duplicates == []
        assert d.added == ["e;s"]
        assert not d.is_closed

    def test_disagreeable_diagnostics(self, disagreeable, disagreeable_algebra):
        d = diagnose(disagreeable, disagreeable_algebra)
        assert (d.listed, d.distinct, d.closure) == (17, 16, 16)
        assert d.duplicates == [("fs", "s_and_t")]
        assert d.is_closed
        assert d.to_dict()["duplicates"] == [["fs", "s_and_t"]]

    def test_unknown_example(self):
        with pytest.raises(InputError):
            paper_example("nonexistent")

    def test_every_fixture_has_a_partition(self):
        for name, model in fixtures().items():
            assert model.fixture == name
            assert model.partition

    def test_model_file_keeps_partition(self, quasiv):
        back = ConcreteModel.from_dict(quasiv.to_dict())
        assert back.partition == quasiv.partition
        assert back.fixture == "quasiv"
        assert back.operations == ("compose", "D", "star")
        assert back.witnesses == {"DT2": {"s": "s", "a": "beta", "t": "e", "u": "1"}}


class TestRandomCorpus:
    def test_reproducible(self):
        first = random_corpus(3, seed=5)
        second = random_corpus(3, seed=5)
        assert [name for name, _ in first] == ["random-5-0", "random-5-1", "random-5-2"]
        for (_, a), (_, b) in zip(first, second):
            assert (a.mult == b.mult).all()

    def test_members_are_valid(self):
        for _, algebra in random_corpus(5, seed=2):
            assert algebra.size <= 40
            assert validate(algebra).is_valid

    def test_gives_up(self):
        corpus = random_corpus(3, seed=1, max_elements=1, max_attempts=4)
        assert corpus == []

    def test_loop_operations(self):
        corpus = random_corpus(2, seed=31, points=4, generators=1, close_under=("compose", "D", "eite", "while"))
        for _, algebra in corpus:
            assert algebra.eite is not None and algebra.whl is not None
            assert algebra.star is None


class TestLoaders:
    def test_kinds(self):
        assert document_kind({"points": 2}) == "model"
        assert document_kind({"size": 1, "mult": [0]}) == "algebra"
        assert document_kind({"blocks": []}) == "partition"
        with pytest.raises(InputError):
            document_kind({"other": 1})

    def test_round_trip_through_files(self, tmp_path, quasiv, three):
        model_file = tmp_path / "quasiv.json"
        model_file.write_text(json.dumps(quasiv.to_dict()), encoding="utf-8")
        algebra_file = tmp_path / "three.json"
        algebra_file.write_text(json.dumps(three.to_dict()), encoding="utf-8")
        partition_file = tmp_path / "blocks.json"
        partition_file.write_text(json.dumps({"blocks": [[0], [1, 2]]}), encoding="utf-8")

        assert load_model(model_file).maps == quasiv.maps
        assert load_algebra(model_file).size == 14
        assert load_algebra(algebra_file).names == ("0", "e", "1")
        assert load_partition(partition_file).blocks == ((0,), (1, 2))
        with pytest.raises(InputError):
            load_algebra(partition_file)
        with pytest.raises(InputError):
            load_model(algebra_file)

    def test_bad_files(self, tmp_path):
        with pytest.raises(InputError):
            load(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{not json", encoding="utf-8")
        with pytest.raises(InputError):
            load(broken)
        listing = tmp_path / "list.json"
        listing.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(InputError):
            load(listing)
