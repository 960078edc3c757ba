from pathlib import Path

import pytest

from glosswsd.errors import MalformedLine, MalformedSenseKey, MissingFile
from glosswsd.senses import (
    POS,
    GlossMode,
    SenseKey,
    first_sense,
    lemma_candidates,
    load_inventory,
    lookup,
    strip_examples,
)


def keys(candidates):
    return [c.key.raw for c in candidates]


class TestSenseKey:
    def test_parse_plain(self):
        key = SenseKey.parse("research%1:04:00::")
        assert key.lemma == "research"
        assert key.ss_type == 1
        assert key.pos is POS.NOUN

    def test_parse_satellite_maps_to_adj(self):
        key = SenseKey.parse("gorgeous%5:00:00:beautiful:00")
        assert key.ss_type == 5
        assert key.pos is POS.ADJ

    @pytest.mark.parametrize(
        "bad",
        [
            "research",
            "research%6:04:00::",
            "research%1:04:00:",
            "research%1:4:00::",
            "research%1:04:00::extra:",
            "",
        ],
    )
    def test_reject_malformed(self, bad):
        with pytest.raises(MalformedSenseKey):
            SenseKey.parse(bad)


class TestLookup:
    def test_research_noun(self, inventory):
        assert keys(lookup(inventory, "research", POS.NOUN)) == [
            "research%1:04:00::",
            "research%1:09:00::",
        ]

    def test_research_verb(self, inventory):
        assert keys(lookup(inventory, "research", POS.VERB)) == [
            "research%2:31:00::",
            "research%2:32:00::",
        ]

    def test_gloss_of_first_research_sense(self, inventory):
        assert inventory.gloss("research%1:04:00::").startswith("systematic investigation to")

    def test_unknown_lemma_is_empty_not_error(self, inventory):
        assert lookup(inventory, "zzzz_not_a_word", POS.NOUN) == []

    def test_case_folding(self, inventory):
        assert keys(lookup(inventory, "Research", POS.NOUN)) == keys(
            lookup(inventory, "research", POS.NOUN)
        )

    def test_space_to_underscore(self, inventory):
        assert keys(lookup(inventory, "red tape", POS.NOUN)) == ["red_tape%1:10:00::"]

    def test_make_verb_count_matches_raw_index(self, inventory, wn_dir):
        raw = (wn_dir / "index.sense").read_text().splitlines()
        expected = sum(1 for line in raw if line.startswith("make%2:"))
        assert len(lookup(inventory, "make", POS.VERB)) == expected

    def test_total_sense_count_matches_index_line_count(self, inventory, wn_dir):
        raw = [l for l in (wn_dir / "index.sense").read_text().splitlines() if l.strip()]
        assert len(inventory) == len(raw)


class TestLemmaCandidates:
    def test_all_pos_candidates_for_research(self, inventory):
        assert keys(lemma_candidates(inventory, "research")) == [
            "research%1:04:00::",
            "research%1:09:00::",
            "research%2:31:00::",
            "research%2:32:00::",
        ]

    def test_groups_follow_pos_order(self, inventory):
        candidates = lemma_candidates(inventory, "stop")
        pos_seq = [c.key.pos for c in candidates]
        assert pos_seq == sorted(pos_seq, key=[POS.NOUN, POS.VERB, POS.ADJ, POS.ADV].index)


class TestFirstSense:
    def test_prefers_pos_hint(self, inventory):
        assert first_sense(inventory, "research", POS.NOUN).key.raw == "research%1:04:00::"

    def test_monosemous(self, inventory):
        assert first_sense(inventory, "pewter", POS.NOUN).key.raw == "pewter%1:27:00::"

    def test_falls_back_across_pos(self, inventory, wn_dir):
        # scrutinize only has verb senses; derive the lowest-numbered one
        # from a raw scan of index.sense
        raw = (wn_dir / "index.sense").read_text().splitlines()
        rows = [l.split() for l in raw if l.startswith("scrutinize%")]
        expected = min(rows, key=lambda r: int(r[2]))[0]
        got = first_sense(inventory, "scrutinize", POS.NOUN)
        assert got.key.raw == expected

    def test_absent_lemma_is_none(self, inventory):
        assert first_sense(inventory, "zorp") is None


class TestInventoryInvariants:
    def test_round_trip_every_key(self, inventory):
        for raw, cand in inventory.by_key.items():
            found = lookup(inventory, cand.key.lemma, cand.key.pos)
            assert [c.key.raw for c in found].count(raw) == 1

    def test_sense_numbers_strictly_increasing(self, inventory):
        for candidates in inventory.entries.values():
            numbers = [c.sense_number for c in candidates]
            assert numbers == sorted(numbers)
            assert len(set(numbers)) == len(numbers)

    def test_glosses_non_empty(self, inventory):
        assert all(c.gloss.strip() for c in inventory.by_key.values())

    def test_definition_is_prefix_of_full_gloss(self, inventory, full_gloss_inventory):
        for raw, cand in inventory.by_key.items():
            full = full_gloss_inventory.gloss(raw)
            assert full.startswith(cand.gloss)

    def test_load_is_deterministic(self, wn_dir, inventory):
        again = load_inventory(wn_dir, GlossMode.DEFINITION_ONLY)
        assert again == inventory


class TestGlossModes:
    def test_examples_stripped_in_definition_mode(self, inventory):
        gloss = inventory.gloss("stop%2:38:00::")
        assert gloss == "come to a halt, stop moving"

    def test_examples_kept_in_full_mode(self, full_gloss_inventory):
        gloss = full_gloss_inventory.gloss("stop%2:38:00::")
        assert gloss == 'come to a halt, stop moving; "the car stopped"'

    def test_strip_examples_keeps_multi_segment_definitions(self):
        assert strip_examples('have an end; terminate; "it stopped"') == "have an end; terminate"

    def test_strip_examples_no_examples(self):
        assert strip_examples("inquire into") == "inquire into"


class TestLoadErrors:
    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingFile):
            load_inventory(tmp_path)

    def _copy_mini(self, wn_dir, tmp_path) -> Path:
        dest = tmp_path / "dict"
        dest.mkdir()
        for name in ("index.sense", "data.noun", "data.verb", "data.adj", "data.adv"):
            (dest / name).write_text((wn_dir / name).read_text())
        return dest

    def test_malformed_index_line_reports_position(self, wn_dir, tmp_path):
        dest = self._copy_mini(wn_dir, tmp_path)
        index = dest / "index.sense"
        index.write_text(index.read_text() + "broken line without key\n")
        with pytest.raises(MalformedLine) as err:
            load_inventory(dest)
        assert err.value.lineno == 25
        assert "broken" in err.value.content

    def test_data_line_without_gloss_separator(self, wn_dir, tmp_path):
        dest = self._copy_mini(wn_dir, tmp_path)
        data = dest / "data.adv"
        data.write_text(data.read_text() + "00099999 02 r 01 oddly 0 000\n")
        with pytest.raises(MalformedLine):
            load_inventory(dest)

    def test_index_entry_without_synset(self, wn_dir, tmp_path):
        dest = self._copy_mini(wn_dir, tmp_path)
        index = dest / "index.sense"
        index.write_text(index.read_text() + "zzz%1:04:00:: 99999999 1 0\n")
        with pytest.raises(MalformedLine):
            load_inventory(dest)
