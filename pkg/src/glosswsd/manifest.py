"""Run manifest: one plain-text file wiring datasets, WordNet and options.

Format, one directive per line (``#`` starts a comment, paths are
relative to the manifest's directory)::

    wordnet <dict-dir>
    train   <name> <data.xml> <gold.key.txt>
    dataset <name> <data.xml> <gold.key.txt> [dev]
    option  gloss_mode  definition_only|full_gloss
    option  pair_mode   plain|weak_supervision
    option  backoff     first_sense|none

Datasets marked ``dev`` are reported separately and excluded from the
test-set concatenation.  Command-line flags override option lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ManifestError, MissingFile
from .pairs import PairMode
from .scoring import BackoffPolicy
from .senses import GlossMode


@dataclass(frozen=True)
class DatasetEntry:
    name: str
    xml_path: Path
    gold_path: Path
    is_dev: bool = False
    is_training: bool = False


@dataclass
class Manifest:
    wordnet_dir: Path
    datasets: list[DatasetEntry] = field(default_factory=list)
    training: DatasetEntry | None = None
    gloss_mode: GlossMode = GlossMode.DEFINITION_ONLY
    pair_mode: PairMode = PairMode.PLAIN
    backoff: BackoffPolicy = BackoffPolicy.FIRST_SENSE

    def dataset(self, name: str) -> DatasetEntry:
        for entry in self.all_entries():
            if entry.name == name:
                return entry
        raise ManifestError(f"unknown dataset {name!r}; manifest has "
                            + ", ".join(e.name for e in self.all_entries()))

    def all_entries(self) -> list[DatasetEntry]:
        entries = list(self.datasets)
        if self.training is not None:
            entries.insert(0, self.training)
        return entries

    def eval_entries(self) -> list[DatasetEntry]:
        return list(self.datasets)

    def dev_names(self) -> frozenset[str]:
        return frozenset(e.name for e in self.datasets if e.is_dev)


_OPTION_PARSERS = {
    "gloss_mode": GlossMode,
    "pair_mode": PairMode,
    "backoff": BackoffPolicy,
}


def load_manifest(path) -> Manifest:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"manifest not found: {path}")
    base = path.parent
    wordnet_dir: Path | None = None
    datasets: list[DatasetEntry] = []
    training: DatasetEntry | None = None
    options: dict[str, object] = {}
    seen_names: set[str] = set()

    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            fields = stripped.split()
            directive, args = fields[0], fields[1:]
            where = f"{path}:{lineno}"
            if directive == "wordnet":
                if len(args) != 1:
                    raise ManifestError(f"{where}: wordnet takes one directory")
                wordnet_dir = base / args[0]
            elif directive in ("dataset", "train"):
                if len(args) < 3 or len(args) > 4 or (len(args) == 4 and args[3] != "dev"):
                    raise ManifestError(f"{where}: expected '<name> <xml> <gold> [dev]'")
                name = args[0]
                if name in seen_names:
                    raise ManifestError(f"{where}: duplicate dataset name {name!r}")
                seen_names.add(name)
                entry = DatasetEntry(
                    name=name,
                    xml_path=base / args[1],
                    gold_path=base / args[2],
                    is_dev=len(args) == 4,
                    is_training=directive == "train",
                )
                if directive == "train":
                    if training is not None:
                        raise ManifestError(f"{where}: more than one train line")
                    training = entry
                else:
                    datasets.append(entry)
            elif directive == "option":
                if len(args) != 2 or args[0] not in _OPTION_PARSERS:
                    raise ManifestError(f"{where}: unknown option line {stripped!r}")
                try:
                    options[args[0]] = _OPTION_PARSERS[args[0]](args[1])
                except ValueError:
                    raise ManifestError(f"{where}: bad value {args[1]!r} for {args[0]}") from None
            else:
                raise ManifestError(f"{where}: unknown directive {directive!r}")

    if wordnet_dir is None:
        raise ManifestError(f"{path}: missing 'wordnet' line")
    if not wordnet_dir.is_dir():
        raise MissingFile(f"{path}: WordNet directory not found: {wordnet_dir}")
    for entry in datasets + ([training] if training else []):
        for p in (entry.xml_path, entry.gold_path):
            if not p.is_file():
                raise MissingFile(f"{path}: dataset {entry.name!r}: file not found: {p}")

    return Manifest(
        wordnet_dir=wordnet_dir,
        datasets=datasets,
        training=training,
        **options,
    )
