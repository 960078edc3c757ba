"""Readers for the unified all-words WSD corpus format.

A dataset is a pair of files: ``<name>.data.xml`` with
``corpus/text/sentence`` elements containing ``wf`` (plain words) and
``instance`` (annotated targets) children, and ``<name>.gold.key.txt``
with one ``instance_id key [key ...]`` line per target.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DuplicateInstanceId,
    MalformedLine,
    MalformedXml,
    MissingFile,
)
from .senses import POS, SenseKey


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    instance_id: str | None = None

    @property
    def is_target(self) -> bool:
        return self.instance_id is not None


@dataclass
class Sentence:
    sentence_id: str
    tokens: list[Token]

    def context_text(self) -> str:
        """The sentence as one string, token surfaces joined by spaces."""
        return " ".join(tok.surface for tok in self.tokens)


@dataclass(frozen=True)
class TargetInstance:
    instance_id: str
    sentence: Sentence
    token_index: int
    lemma: str
    pos: POS


class GoldKeys:
    """instance_id -> non-empty frozenset of SenseKey."""

    def __init__(self, keys: dict[str, frozenset[SenseKey]]):
        self._keys = keys

    def __contains__(self, instance_id: str) -> bool:
        return instance_id in self._keys

    def __len__(self) -> int:
        return len(self._keys)

    def __getitem__(self, instance_id: str) -> frozenset[SenseKey]:
        return self._keys[instance_id]

    def get(self, instance_id: str) -> frozenset[SenseKey] | None:
        return self._keys.get(instance_id)

    def items(self):
        return self._keys.items()

    def ids(self):
        return self._keys.keys()


def load_corpus(xml_path) -> list[Sentence]:
    """Parse a ``.data.xml`` corpus file into sentences.

    Surfaces are preserved verbatim and sentences are never merged.
    Raises MalformedXml on broken XML or schema violations and
    DuplicateInstanceId when an instance id repeats.
    """
    path = Path(xml_path)
    if not path.is_file():
        raise MissingFile(f"corpus file not found: {path}")
    try:
        tree = ET.parse(path)
    except ET.ParseError as exc:
        raise MalformedXml(f"{path}: {exc}") from exc

    sentences: list[Sentence] = []
    seen_ids: set[str] = set()
    for sent_el in tree.iter("sentence"):
        sentence_id = sent_el.get("id", "")
        tokens: list[Token] = []
        for child in sent_el:
            if child.tag == "wf":
                tokens.append(
                    Token(
                        surface=child.text or "",
                        lemma=child.get("lemma", ""),
                        pos=child.get("pos", ""),
                    )
                )
            elif child.tag == "instance":
                instance_id = child.get("id")
                if not instance_id:
                    raise MalformedXml(f"{path}: instance without id in sentence {sentence_id!r}")
                if instance_id in seen_ids:
                    raise DuplicateInstanceId(f"{path}: duplicate instance id {instance_id!r}")
                seen_ids.add(instance_id)
                lemma = child.get("lemma")
                pos = child.get("pos")
                if not lemma or not pos:
                    raise MalformedXml(f"{path}: instance {instance_id!r} lacks lemma or pos")
                try:
                    POS.from_tag(pos)
                except ValueError as exc:
                    raise MalformedXml(f"{path}: instance {instance_id!r}: {exc}") from exc
                tokens.append(
                    Token(
                        surface=child.text or "",
                        lemma=lemma,
                        pos=pos,
                        instance_id=instance_id,
                    )
                )
        if not tokens:
            raise MalformedXml(f"{path}: sentence {sentence_id!r} has no tokens")
        sentences.append(Sentence(sentence_id=sentence_id, tokens=tokens))
    return sentences


def load_gold(key_path) -> GoldKeys:
    """Parse a ``.gold.key.txt`` file; multiple keys per line form a set."""
    path = Path(key_path)
    if not path.is_file():
        raise MissingFile(f"gold key file not found: {path}")
    keys: dict[str, frozenset[SenseKey]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            fields = stripped.split()
            if len(fields) < 2:
                raise MalformedLine(path, lineno, stripped, "expected instance id and at least one key")
            instance_id = fields[0]
            if instance_id in keys:
                raise DuplicateInstanceId(f"{path}:{lineno}: duplicate instance id {instance_id!r}")
            keys[instance_id] = frozenset(SenseKey.parse(raw) for raw in fields[1:])
    return GoldKeys(keys)


def instances(corpus: list[Sentence]) -> list[TargetInstance]:
    """All target instances of a corpus in document order."""
    out: list[TargetInstance] = []
    for sentence in corpus:
        for index, token in enumerate(sentence.tokens):
            if token.instance_id is not None:
                out.append(
                    TargetInstance(
                        instance_id=token.instance_id,
                        sentence=sentence,
                        token_index=index,
                        lemma=token.lemma,
                        pos=POS.from_tag(token.pos),
                    )
                )
    return out


@dataclass
class PosCounts:
    """Instance counts per part of speech for one dataset."""

    total: int = 0
    per_pos: dict[POS, int] = field(default_factory=dict)

    def count(self, pos: POS) -> int:
        return self.per_pos.get(pos, 0)


def count_instances(corpus: list[Sentence]) -> PosCounts:
    counts = PosCounts()
    for inst in instances(corpus):
        counts.total += 1
        counts.per_pos[inst.pos] = counts.per_pos.get(inst.pos, 0) + 1
    return counts
