import pytest

from glosswsd.corpus import count_instances, instances, load_corpus, load_gold
from glosswsd.errors import (
    DuplicateInstanceId,
    MalformedLine,
    MalformedXml,
    MissingFile,
)
from glosswsd.senses import POS

from conftest import DATA_DIR


class TestLoadCorpus:
    def test_sentence_and_target_counts(self, minia):
        sentences, targets, _ = minia
        assert len(sentences) == 3
        assert len(targets) == 8

    def test_pos_totals_hand_counted(self, minia, minib, minisemcor, minidev):
        for fixture, expected in (
            (minisemcor, (12, 4, 6, 1, 1)),
            (minia, (8, 3, 4, 0, 1)),
            (minib, (5, 2, 1, 1, 1)),
            (minidev, (2, 1, 1, 0, 0)),
        ):
            counts = count_instances(fixture[0])
            got = (
                counts.total,
                counts.count(POS.NOUN),
                counts.count(POS.VERB),
                counts.count(POS.ADJ),
                counts.count(POS.ADV),
            )
            assert got == expected

    def test_surfaces_verbatim(self, minia):
        sentences, _, _ = minia
        assert sentences[0].context_text() == (
            "Your research stopped when a convenient assertion could be made ."
        )

    def test_multiword_surface_kept_as_one_token(self, minia):
        sentences, targets, _ = minia
        red_tape = [t for t in targets if t.lemma == "red_tape"][0]
        assert red_tape.sentence.tokens[red_tape.token_index].surface == "Red tape"

    def test_sentence_without_instances(self, tmp_path):
        xml = tmp_path / "c.data.xml"
        xml.write_text(
            "<corpus><text id='d0'><sentence id='d0.s0'>"
            "<wf lemma='hello' pos='X'>Hello</wf></sentence></text></corpus>"
        )
        sentences = load_corpus(xml)
        assert len(sentences) == 1
        assert instances(sentences) == []

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingFile):
            load_corpus(tmp_path / "nope.xml")

    def test_malformed_xml(self, tmp_path):
        bad = tmp_path / "bad.xml"
        bad.write_text("<corpus><sentence id='x'>")
        with pytest.raises(MalformedXml):
            load_corpus(bad)

    def test_duplicate_instance_id(self, tmp_path):
        bad = tmp_path / "dup.xml"
        bad.write_text(
            "<corpus><text id='d0'><sentence id='d0.s0'>"
            "<instance id='d0.s0.t0' lemma='stop' pos='VERB'>stops</instance>"
            "<instance id='d0.s0.t0' lemma='stop' pos='VERB'>stops</instance>"
            "</sentence></text></corpus>"
        )
        with pytest.raises(DuplicateInstanceId):
            load_corpus(bad)

    def test_instance_with_bad_pos(self, tmp_path):
        bad = tmp_path / "pos.xml"
        bad.write_text(
            "<corpus><text id='d0'><sentence id='d0.s0'>"
            "<instance id='d0.s0.t0' lemma='hello' pos='DET'>hello</instance>"
            "</sentence></text></corpus>"
        )
        with pytest.raises(MalformedXml):
            load_corpus(bad)


class TestLoadGold:
    def test_single_key_line(self, tmp_path):
        path = tmp_path / "g.key.txt"
        path.write_text("d000.s000.t000 research%1:04:00::\n")
        gold = load_gold(path)
        assert len(gold) == 1
        assert {k.raw for k in gold["d000.s000.t000"]} == {"research%1:04:00::"}

    def test_multi_key_lines_counted_by_raw_scan(self, minib):
        _, _, gold = minib
        raw = (DATA_DIR / "corpora" / "minib.gold.key.txt").read_text().splitlines()
        expected_multi = sum(1 for line in raw if len(line.split()) > 2)
        got_multi = sum(1 for _, keys in gold.items() if len(keys) > 1)
        assert got_multi == expected_multi == 1
        assert len(gold["d000.s001.t001"]) == 2

    def test_missing_key_on_line(self, tmp_path):
        path = tmp_path / "g.key.txt"
        path.write_text("d000.s000.t000\n")
        with pytest.raises(MalformedLine):
            load_gold(path)

    def test_duplicate_instance_line(self, tmp_path):
        path = tmp_path / "g.key.txt"
        path.write_text(
            "d0.s0.t0 research%1:04:00::\nd0.s0.t0 research%1:09:00::\n"
        )
        with pytest.raises(DuplicateInstanceId):
            load_gold(path)


class TestInstances:
    def test_document_order(self, minia):
        _, targets, _ = minia
        assert [t.instance_id for t in targets] == sorted(t.instance_id for t in targets)

    def test_empty_corpus(self):
        assert instances([]) == []

    def test_token_index_matches_instance(self, minia, minib, minisemcor):
        for sentences, targets, _ in (minia, minib, minisemcor):
            for target in targets:
                token = target.sentence.tokens[target.token_index]
                assert token.instance_id == target.instance_id

    def test_gold_coverage_both_directions(self, minia, minib, minisemcor, minidev):
        for _, targets, gold in (minia, minib, minisemcor, minidev):
            ids = {t.instance_id for t in targets}
            assert ids == set(gold.ids())

    def test_reconstruction_places_target_surface(self, minia, minib):
        for sentences, targets, _ in (minia, minib):
            for target in targets:
                words = target.sentence.context_text().split()
                start = sum(
                    len(tok.surface.split())
                    for tok in target.sentence.tokens[: target.token_index]
                )
                surface = target.sentence.tokens[target.token_index].surface
                width = len(surface.split())
                assert " ".join(words[start : start + width]) == surface
