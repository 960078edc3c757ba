"""Context-gloss pair construction.

For one target, a pair record is built per candidate sense of its lemma
(across all parts of speech, in inventory order).  Two construction modes
exist:

* plain — context is the sentence as-is, gloss is the sense gloss.
* weak_supervision — a standalone ASCII ``"`` token is inserted
  immediately before and after the target occurrence (and nowhere else),
  and the gloss is prefixed with ``<lemma> : `` so the classifier is told
  which word the gloss belongs to.

Pair files are tab-separated with a fixed eight-column header; they are
the contract consumed by the fine-tuning bridge and by score aggregation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .corpus import GoldKeys, TargetInstance
from .errors import MalformedLine, MissingFile, NoCandidates
from .fileio import atomic_write
from .senses import SenseInventory, SenseKey, lemma_candidates, lookup

log = logging.getLogger(__name__)

QUOTE_TOKEN = '"'

PAIR_COLUMNS = (
    "pair_id",
    "instance_id",
    "label",
    "sense_key",
    "target_start",
    "target_end",
    "context_text",
    "gloss_text",
)


class PairMode(Enum):
    PLAIN = "plain"
    WEAK_SUPERVISION = "weak_supervision"


class Label(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PairRecord:
    pair_id: str
    instance_id: str
    sense_key: SenseKey
    context_text: str
    gloss_text: str
    label: Label
    target_start: int
    target_end: int


@dataclass
class PairSet:
    instance_id: str
    records: list[PairRecord]

    @property
    def n_candidates(self) -> int:
        return len(self.records)


def build_pairs(
    target: TargetInstance,
    inv: SenseInventory,
    mode: PairMode = PairMode.PLAIN,
    gold: GoldKeys | None = None,
    pos_filtered: bool = False,
) -> PairSet:
    """One PairRecord per candidate sense of the target's lemma.

    Candidates default to every sense of the lemma regardless of POS (a
    noun target is paired with its verb glosses too); pos_filtered
    restricts them to the tagged POS.  With gold keys the records are
    labeled yes/no, otherwise unknown.  Raises NoCandidates when the
    inventory knows nothing about the lemma.
    """
    if pos_filtered:
        candidates = lookup(inv, target.lemma, target.pos)
    else:
        candidates = lemma_candidates(inv, target.lemma)
    if not candidates:
        raise NoCandidates(
            f"no inventory candidates for instance {target.instance_id!r} "
            f"(lemma {target.lemma!r})"
        )

    tokens = [tok.surface for tok in target.sentence.tokens]
    start = sum(len(surface.split()) for surface in tokens[: target.token_index])
    width = len(tokens[target.token_index].split())
    if mode is PairMode.PLAIN:
        context = " ".join(tokens)
        span = (start, start + width)
    else:
        marked = (
            tokens[: target.token_index]
            + [QUOTE_TOKEN, tokens[target.token_index], QUOTE_TOKEN]
            + tokens[target.token_index + 1 :]
        )
        context = " ".join(marked)
        span = (start, start + width + 2)

    gold_set: frozenset[SenseKey] | None = None
    if gold is not None:
        gold_set = gold.get(target.instance_id)
    if gold_set is not None and not any(c.key in gold_set for c in candidates):
        log.warning(
            "gold key(s) %s for instance %s not among the %d candidates of lemma %r",
            " ".join(sorted(k.raw for k in gold_set)),
            target.instance_id,
            len(candidates),
            target.lemma,
        )

    records = []
    for ordinal, cand in enumerate(candidates, start=1):
        if gold_set is None:
            label = Label.UNKNOWN
        else:
            label = Label.YES if cand.key in gold_set else Label.NO
        gloss_text = cand.gloss
        if mode is PairMode.WEAK_SUPERVISION:
            gloss_text = f"{target.lemma} : {gloss_text}"
        records.append(
            PairRecord(
                pair_id=f"{target.instance_id}#{ordinal}",
                instance_id=target.instance_id,
                sense_key=cand.key,
                context_text=context,
                gloss_text=gloss_text,
                label=label,
                target_start=span[0],
                target_end=span[1],
            )
        )
    return PairSet(instance_id=target.instance_id, records=records)


def build_all_pairs(
    targets: Iterable[TargetInstance],
    inv: SenseInventory,
    mode: PairMode = PairMode.PLAIN,
    gold: GoldKeys | None = None,
    pos_filtered: bool = False,
) -> tuple[list[PairSet], list[TargetInstance]]:
    """Build pair sets for all targets; returns (pair_sets, skipped).

    Targets whose lemma is absent from the inventory are collected in
    ``skipped`` for backoff at aggregation time instead of aborting.
    """
    pair_sets: list[PairSet] = []
    skipped: list[TargetInstance] = []
    for target in targets:
        try:
            pair_sets.append(build_pairs(target, inv, mode, gold, pos_filtered))
        except NoCandidates:
            skipped.append(target)
    if skipped:
        log.info("%d instance(s) had no inventory candidates", len(skipped))
    return pair_sets, skipped


def _flatten(text: str) -> str:
    return text.replace("\t", " ").replace("\n", " ").replace("\r", " ")


def emit_pairs(pair_sets: Iterable[PairSet], out) -> int:
    """Write pair records as a TSV file with a header row; returns rows."""
    count = 0
    with atomic_write(out) as handle:
        handle.write("\t".join(PAIR_COLUMNS) + "\n")
        for pair_set in pair_sets:
            for rec in pair_set.records:
                handle.write(
                    "\t".join(
                        (
                            rec.pair_id,
                            rec.instance_id,
                            rec.label.value,
                            rec.sense_key.raw,
                            str(rec.target_start),
                            str(rec.target_end),
                            _flatten(rec.context_text),
                            _flatten(rec.gloss_text),
                        )
                    )
                    + "\n"
                )
                count += 1
    return count


def read_pairs(path) -> list[PairSet]:
    """Read a pair file back into PairSets grouped by instance."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"pair file not found: {path}")
    sets: dict[str, PairSet] = {}
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().rstrip("\n")
        if tuple(header.split("\t")) != PAIR_COLUMNS:
            raise MalformedLine(path, 1, header, "bad pair file header")
        for lineno, line in enumerate(handle, start=2):
            stripped = line.rstrip("\n")
            if not stripped:
                continue
            fields = stripped.split("\t")
            if len(fields) != len(PAIR_COLUMNS):
                raise MalformedLine(path, lineno, stripped, f"expected {len(PAIR_COLUMNS)} columns")
            pair_id, instance_id, label, raw_key, start, end, context, gloss = fields
            try:
                record = PairRecord(
                    pair_id=pair_id,
                    instance_id=instance_id,
                    sense_key=SenseKey.parse(raw_key),
                    context_text=context,
                    gloss_text=gloss,
                    label=Label(label),
                    target_start=int(start),
                    target_end=int(end),
                )
            except ValueError as exc:
                raise MalformedLine(path, lineno, stripped, str(exc)) from exc
            sets.setdefault(instance_id, PairSet(instance_id=instance_id, records=[])).records.append(record)
    return list(sets.values())


def iter_records(pair_sets: Iterable[PairSet]) -> Iterator[PairRecord]:
    for pair_set in pair_sets:
        yield from pair_set.records
