"""WordNet 3.0 sense inventory: candidate senses and glosses per lemma.

The inventory is built from two kinds of database files in a WordNet
``dict`` directory:

* ``index.sense`` — one line per sense:
  ``sense_key synset_offset sense_number tag_cnt`` (single spaces).
* ``data.{noun,verb,adj,adv}`` — synset records whose gloss follows the
  `` | `` separator.  Header lines begin with a space and are skipped.

Satellite adjectives (ss_type 5) are merged into the ADJ entry of their
lemma, which is how the evaluation corpora tag them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import MalformedLine, MalformedSenseKey, MissingFile


class POS(Enum):
    NOUN = "n"
    VERB = "v"
    ADJ = "a"
    ADV = "r"

    @classmethod
    def from_tag(cls, tag: str) -> "POS":
        """Map a corpus POS attribute (NOUN/VERB/ADJ/ADV) to a POS."""
        try:
            return cls[tag.upper()]
        except KeyError:
            raise ValueError(f"not a content POS tag: {tag!r}") from None

    @classmethod
    def from_ss_type(cls, ss_type: int) -> "POS":
        """Map a sense-key ss_type (1-5) to a POS; 5 (satellite) -> ADJ."""
        return _SS_TYPE_POS[ss_type]

    def __str__(self) -> str:
        return self.name.capitalize()


_SS_TYPE_POS = {1: POS.NOUN, 2: POS.VERB, 3: POS.ADJ, 4: POS.ADV, 5: POS.ADJ}

# order in which per-POS candidate groups are concatenated for a lemma
POS_ORDER = (POS.NOUN, POS.VERB, POS.ADJ, POS.ADV)

_SENSE_KEY_RE = re.compile(
    r"^(?P<lemma>[^%]+)%(?P<ss_type>[1-5]):(?P<lex_filenum>\d{2}):"
    r"(?P<lex_id>\d{2}):(?P<head_word>[^:]*):(?P<head_id>\d{2}|)$"
)


class GlossMode(Enum):
    DEFINITION_ONLY = "definition_only"
    FULL_GLOSS = "full_gloss"


@dataclass(frozen=True)
class SenseKey:
    """One WordNet sense key, e.g. ``research%1:04:00::``."""

    raw: str
    lemma: str
    ss_type: int

    @classmethod
    def parse(cls, raw: str) -> "SenseKey":
        m = _SENSE_KEY_RE.match(raw)
        if m is None:
            raise MalformedSenseKey(f"not a sense key: {raw!r}")
        return cls(raw=raw, lemma=m.group("lemma"), ss_type=int(m.group("ss_type")))

    @property
    def pos(self) -> POS:
        return POS.from_ss_type(self.ss_type)

    def __str__(self) -> str:
        return self.raw


@dataclass(frozen=True)
class CandidateSense:
    """One candidate sense of a lemma: key, rank, synset and gloss."""

    key: SenseKey
    sense_number: int
    synset_offset: str
    gloss: str


@dataclass
class SenseInventory:
    """Lemma+POS -> ordered candidate senses, plus a raw-key index."""

    gloss_mode: GlossMode
    entries: dict[tuple[str, POS], list[CandidateSense]] = field(default_factory=dict)
    by_key: dict[str, CandidateSense] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.by_key)

    def sense(self, raw_key: str) -> CandidateSense | None:
        return self.by_key.get(raw_key)

    def gloss(self, raw_key: str) -> str | None:
        cand = self.by_key.get(raw_key)
        return cand.gloss if cand is not None else None


def normalize_lemma(lemma: str) -> str:
    """Lowercase and join internal spaces with underscores."""
    return lemma.lower().replace(" ", "_")


def strip_examples(gloss: str) -> str:
    """Drop quoted example segments, keeping the definition text.

    Gloss segments are separated by ``; ``; example segments start with a
    double quote.  Examples follow the definitions in the database files,
    so the result is a prefix of the full gloss.
    """
    kept = [seg for seg in gloss.split("; ") if not seg.lstrip().startswith('"')]
    return "; ".join(kept).strip()


_DATA_FILES = {
    POS.NOUN: "data.noun",
    POS.VERB: "data.verb",
    POS.ADJ: "data.adj",
    POS.ADV: "data.adv",
}


def _read_glosses(path: Path) -> dict[str, str]:
    """Map synset offset -> raw gloss for one data file."""
    glosses: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if line.startswith(" ") or not line.strip():
                continue  # copyright header / blank
            offset, sep, rest = line.partition(" | ")
            if not sep:
                raise MalformedLine(path, lineno, line.rstrip("\n"), "no gloss separator")
            offset = offset.split(" ", 1)[0]
            if not re.fullmatch(r"\d{8}", offset):
                raise MalformedLine(path, lineno, line.rstrip("\n"), "bad synset offset")
            glosses[offset] = rest.strip()
    return glosses


def load_inventory(wordnet_dir, gloss_mode: GlossMode = GlossMode.DEFINITION_ONLY) -> SenseInventory:
    """Parse a WordNet 3.0 ``dict`` directory into a SenseInventory.

    Covers every key listed in ``index.sense``.  Raises MissingFile if a
    database file is absent and MalformedLine (with file, line number and
    content) on the first unparseable line.
    """
    root = Path(wordnet_dir)
    index_path = root / "index.sense"
    required = [index_path] + [root / name for name in _DATA_FILES.values()]
    for path in required:
        if not path.is_file():
            raise MissingFile(f"required WordNet database file not found: {path}")

    glosses = {pos: _read_glosses(root / name) for pos, name in _DATA_FILES.items()}

    inv = SenseInventory(gloss_mode=gloss_mode)
    with open(index_path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped:
                continue
            fields = stripped.split(" ")
            if len(fields) != 4:
                raise MalformedLine(index_path, lineno, stripped, "expected 4 space-separated fields")
            raw_key, offset, sense_number, _tag_cnt = fields
            try:
                key = SenseKey.parse(raw_key)
            except MalformedSenseKey as exc:
                raise MalformedLine(index_path, lineno, stripped, str(exc)) from exc
            if not sense_number.isdigit() or int(sense_number) < 1:
                raise MalformedLine(index_path, lineno, stripped, "bad sense number")
            gloss = glosses[key.pos].get(offset)
            if gloss is None:
                raise MalformedLine(
                    index_path, lineno, stripped,
                    f"synset {offset} not found in {_DATA_FILES[key.pos]}",
                )
            if gloss_mode is GlossMode.DEFINITION_ONLY:
                stripped_gloss = strip_examples(gloss)
                gloss = stripped_gloss if stripped_gloss else gloss.strip()
            if raw_key in inv.by_key:
                raise MalformedLine(index_path, lineno, stripped, "duplicate sense key")
            cand = CandidateSense(
                key=key,
                sense_number=int(sense_number),
                synset_offset=offset,
                gloss=gloss,
            )
            inv.by_key[raw_key] = cand
            inv.entries.setdefault((key.lemma, key.pos), []).append(cand)

    for candidates in inv.entries.values():
        candidates.sort(key=lambda c: c.sense_number)
    return inv


def lookup(inv: SenseInventory, lemma: str, pos: POS) -> list[CandidateSense]:
    """Ordered candidate senses for (lemma, pos); empty when unknown."""
    return list(inv.entries.get((normalize_lemma(lemma), pos), ()))


def lemma_candidates(inv: SenseInventory, lemma: str) -> list[CandidateSense]:
    """Candidate senses of a lemma across all parts of speech.

    Groups follow POS_ORDER, each group in sense-number order; this is the
    candidate list used for context-gloss pair construction, where a
    target's candidates come from every entry of its lemma.
    """
    norm = normalize_lemma(lemma)
    out: list[CandidateSense] = []
    for pos in POS_ORDER:
        out.extend(inv.entries.get((norm, pos), ()))
    return out


def first_sense(inv: SenseInventory, lemma: str, pos_hint: POS | None = None) -> CandidateSense | None:
    """Lowest-numbered sense for the lemma, preferring pos_hint.

    Falls back to the lowest sense number across all POS (ties resolved in
    POS_ORDER); returns None when the lemma is absent altogether.
    """
    if pos_hint is not None:
        candidates = lookup(inv, lemma, pos_hint)
        if candidates:
            return candidates[0]
    best: CandidateSense | None = None
    for cand in lemma_candidates(inv, lemma):
        if best is None or cand.sense_number < best.sense_number:
            best = cand
    return best
