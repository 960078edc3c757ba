"""Reference systems: most-frequent-sense baseline and a gloss-overlap scorer.

The MFS baseline counts gold sense keys per (lemma, POS) over the training
corpus and predicts the most frequent one, falling back to the WordNet
first sense for unseen targets.  The overlap scorer is a bag-of-words
gloss/context intersection in pair-score form; it exists as a cheap,
fully deterministic stand-in for a neural pair scorer.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .corpus import GoldKeys, TargetInstance
from .errors import MalformedLine, MissingFile
from .fileio import atomic_write
from .pairs import PairRecord, PairSet
from .scoring import Prediction, PredictionSource, ScoreRecord
from .senses import POS, SenseInventory, SenseKey, first_sense, normalize_lemma

_WORD_RE = re.compile(r"[a-z0-9]+")


@dataclass
class SenseFrequencyTable:
    """(lemma, POS) -> sense-key counts from training-corpus annotations.

    Keys that the inventory does not list under their (lemma, POS) entry
    are still counted but also recorded in ``mismatches``.
    """

    counts: dict[tuple[str, POS], Counter] = field(default_factory=dict)
    mismatches: list[tuple[str, POS, str]] = field(default_factory=list)

    def entry(self, lemma: str, pos: POS) -> Counter | None:
        return self.counts.get((normalize_lemma(lemma), pos))


def train_mfs(
    targets: list[TargetInstance],
    gold: GoldKeys,
    inv: SenseInventory | None = None,
) -> SenseFrequencyTable:
    """Count gold keys per (lemma, POS); multi-key instances count each key."""
    table = SenseFrequencyTable()
    for target in targets:
        gold_set = gold.get(target.instance_id)
        if gold_set is None:
            continue
        slot = (normalize_lemma(target.lemma), target.pos)
        counter = table.counts.setdefault(slot, Counter())
        for key in gold_set:
            counter[key.raw] += 1
            if inv is not None:
                cand = inv.sense(key.raw)
                if cand is None or (cand.key.lemma, cand.key.pos) != slot:
                    table.mismatches.append((slot[0], slot[1], key.raw))
    return table


def predict_mfs(
    table: SenseFrequencyTable,
    target: TargetInstance,
    inv: SenseInventory,
) -> Prediction:
    """Most frequent training sense; count ties go to the lowest sense
    number; unseen (lemma, POS) falls back to the first sense."""
    counter = table.entry(target.lemma, target.pos)
    if counter:
        def rank(raw_key: str):
            cand = inv.sense(raw_key)
            number = cand.sense_number if cand is not None else float("inf")
            return (-counter[raw_key], number, raw_key)

        best = min(counter, key=rank)
        return Prediction(target.instance_id, SenseKey.parse(best), PredictionSource.ARGMAX)
    cand = first_sense(inv, target.lemma, target.pos)
    if cand is not None:
        return Prediction(target.instance_id, cand.key, PredictionSource.BACKOFF_FIRST_SENSE)
    return Prediction(target.instance_id, None, PredictionSource.UNANSWERED)


def save_table(table: SenseFrequencyTable, out) -> int:
    """Serialize as sorted ``lemma pos sense_key count`` lines."""
    rows = []
    for (lemma, pos), counter in table.counts.items():
        for raw_key, count in counter.items():
            rows.append((lemma, pos.name, raw_key, count))
    rows.sort()
    with atomic_write(out) as handle:
        for lemma, pos_name, raw_key, count in rows:
            handle.write(f"{lemma} {pos_name} {raw_key} {count}\n")
    return len(rows)


def load_table(path) -> SenseFrequencyTable:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"sense frequency table not found: {path}")
    table = SenseFrequencyTable()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            fields = stripped.split()
            if len(fields) != 4 or not fields[3].isdigit():
                raise MalformedLine(path, lineno, stripped, "expected 'lemma pos key count'")
            lemma, pos_name, raw_key, count = fields
            slot = (lemma, POS[pos_name])
            table.counts.setdefault(slot, Counter())[raw_key] = int(count)
    return table


def load_stopwords() -> frozenset[str]:
    """The function-word stoplist shipped with the package."""
    text = resources.files("glosswsd").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(
        line.strip() for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


def _content_tokens(text: str, stopwords: frozenset[str], excluded: frozenset[str]) -> Counter:
    tokens = _WORD_RE.findall(text.lower())
    return Counter(tok for tok in tokens if tok not in stopwords and tok not in excluded)


def overlap_score(
    pair: PairRecord,
    stopwords: frozenset[str],
    target_words: frozenset[str] = frozenset(),
) -> ScoreRecord:
    """Bag-of-words gloss/context overlap as a yes-probability.

    p_yes = |content-token multiset intersection| / (1 + gloss content
    tokens), which stays strictly below 1 and is 0 without shared tokens.
    ``target_words`` (the target's surface and lemma tokens) are excluded
    so the target itself never counts as overlap.
    """
    excluded = frozenset(w.lower() for w in target_words)
    context = _content_tokens(pair.context_text, stopwords, excluded)
    gloss = _content_tokens(pair.gloss_text, stopwords, excluded)
    shared = sum((context & gloss).values())
    p_yes = shared / (1 + sum(gloss.values()))
    return ScoreRecord(pair.pair_id, pair.instance_id, pair.sense_key, min(1.0, max(0.0, p_yes)))


def target_word_forms(target: TargetInstance) -> frozenset[str]:
    """Surface and lemma word forms of a target, for overlap exclusion."""
    surface = target.sentence.tokens[target.token_index].surface
    forms = set(_WORD_RE.findall(surface.lower()))
    forms.update(_WORD_RE.findall(target.lemma.lower()))
    return frozenset(forms)


def overlap_score_all(
    pair_sets: list[PairSet],
    targets: list[TargetInstance],
    stopwords: frozenset[str] | None = None,
) -> list[ScoreRecord]:
    """Overlap-score every pair of every pair set."""
    if stopwords is None:
        stopwords = load_stopwords()
    forms = {t.instance_id: target_word_forms(t) for t in targets}
    records: list[ScoreRecord] = []
    for pair_set in pair_sets:
        excluded = forms.get(pair_set.instance_id, frozenset())
        for pair in pair_set.records:
            records.append(overlap_score(pair, stopwords, excluded))
    return records


def oracle_scores(pair_sets: list[PairSet], gold: GoldKeys) -> list[ScoreRecord]:
    """p_yes = 1 for pairs whose key is gold, 0 otherwise."""
    records: list[ScoreRecord] = []
    for pair_set in pair_sets:
        gold_set = gold.get(pair_set.instance_id) or frozenset()
        for pair in pair_set.records:
            p = 1.0 if pair.sense_key in gold_set else 0.0
            records.append(ScoreRecord(pair.pair_id, pair.instance_id, pair.sense_key, p))
    return records


def random_expected_f1(candidate_counts: list[int], total: int) -> float:
    """Expected micro F1 of picking uniformly among each target's candidates.

    Each target with n candidates contributes 1/n expected correct
    predictions; targets without candidates contribute nothing.
    """
    if total == 0:
        return 0.0
    expected_correct = sum(1.0 / n for n in candidate_counts if n > 0)
    return 100.0 * expected_correct / total
