"""Reader for the tab-separated context-gloss pair files.

This is the file contract with the pipeline that emits the pairs; the
bridge never imports that pipeline, it only parses its output.  Columns:
pair_id, instance_id, label, sense_key, target_start, target_end,
context_text, gloss_text.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import PairFileError, VariantMismatch

COLUMNS = (
    "pair_id",
    "instance_id",
    "label",
    "sense_key",
    "target_start",
    "target_end",
    "context_text",
    "gloss_text",
)

LABELS = {"yes": 1, "no": 0, "unknown": -1}


@dataclass(frozen=True)
class Pair:
    pair_id: str
    instance_id: str
    label: int  # 1 yes, 0 no, -1 unknown
    sense_key: str
    target_start: int
    target_end: int
    context_text: str
    gloss_text: str

    @property
    def is_marked(self) -> bool:
        """True when the target is wrapped in standalone quote tokens."""
        tokens = self.context_text.split()
        return (
            self.target_end - self.target_start >= 3
            and self.target_end <= len(tokens)
            and tokens[self.target_start] == '"'
            and tokens[self.target_end - 1] == '"'
        )


def read_pairs(path) -> list[Pair]:
    path = Path(path)
    if not path.is_file():
        raise PairFileError(f"pair file not found: {path}")
    pairs: list[Pair] = []
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().rstrip("\n")
        if tuple(header.split("\t")) != COLUMNS:
            raise PairFileError(f"{path}: unexpected header {header!r}")
        for lineno, line in enumerate(handle, start=2):
            stripped = line.rstrip("\n")
            if not stripped:
                continue
            fields = stripped.split("\t")
            if len(fields) != len(COLUMNS):
                raise PairFileError(f"{path}:{lineno}: expected {len(COLUMNS)} columns")
            pair_id, instance_id, label, key, start, end, context, gloss = fields
            if label not in LABELS:
                raise PairFileError(f"{path}:{lineno}: unknown label {label!r}")
            try:
                start_i, end_i = int(start), int(end)
            except ValueError:
                raise PairFileError(f"{path}:{lineno}: non-integer span") from None
            pairs.append(
                Pair(pair_id, instance_id, LABELS[label], key, start_i, end_i, context, gloss)
            )
    return pairs


def check_mode(pairs: list[Pair], variant: str) -> None:
    """Weak-supervision variants need marked pairs and vice versa."""
    if not pairs:
        return
    marked = sum(1 for p in pairs if p.is_marked)
    if variant == "sent_cls_ws" and marked < len(pairs):
        raise VariantMismatch(
            f"variant sent_cls_ws needs weak-supervision pairs; "
            f"{len(pairs) - marked} of {len(pairs)} rows are unmarked"
        )
    if variant in ("sent_cls", "token_cls") and marked > 0:
        raise VariantMismatch(
            f"variant {variant} needs plain pairs; {marked} rows carry weak-supervision marks"
        )


def require_labels(pairs: list[Pair]) -> None:
    unknown = sum(1 for p in pairs if p.label < 0)
    if unknown:
        raise PairFileError(
            f"{unknown} pair(s) carry label 'unknown'; training needs yes/no labels"
        )
