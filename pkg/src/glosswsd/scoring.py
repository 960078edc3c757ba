"""Per-pair scores -> per-target predictions -> micro-F1 reports.

The prediction rule: within one target's pair set, choose the sense whose
pair got the highest yes-probability; ties go to the earliest candidate
(lowest sense number).  Targets without any candidates fall back to the
lemma's first sense when the backoff policy allows, else stay unanswered.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import GoldKeys, TargetInstance
from .errors import (
    DuplicateScore,
    MalformedLine,
    MalformedScoreLine,
    MalformedSenseKey,
    MissingFile,
    OutOfRangeProbability,
    ScoreCoverageGap,
    UnknownInstance,
)
from .fileio import atomic_write
from .pairs import PairSet
from .senses import POS, POS_ORDER, SenseInventory, SenseKey, first_sense

log = logging.getLogger(__name__)

SCORE_COLUMNS = ("pair_id", "instance_id", "sense_key", "p_yes")


class BackoffPolicy(Enum):
    FIRST_SENSE = "first_sense"
    NONE = "none"


class PredictionSource(Enum):
    ARGMAX = "argmax"
    BACKOFF_FIRST_SENSE = "backoff_first_sense"
    UNANSWERED = "unanswered"


@dataclass(frozen=True)
class ScoreRecord:
    pair_id: str
    instance_id: str
    sense_key: SenseKey
    p_yes: float


@dataclass(frozen=True)
class Prediction:
    instance_id: str
    predicted_key: SenseKey | None
    source: PredictionSource


def read_scores(path) -> list[ScoreRecord]:
    """Read a score file (tab- or comma-separated, fixed header)."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"score file not found: {path}")
    records: list[ScoreRecord] = []
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().rstrip("\n")
        sep = "\t" if "\t" in header else ","
        if tuple(header.split(sep)) != SCORE_COLUMNS:
            raise MalformedScoreLine(f"{path}:1: bad score file header: {header!r}")
        for lineno, line in enumerate(handle, start=2):
            stripped = line.rstrip("\n")
            if not stripped:
                continue
            fields = stripped.split(sep)
            if len(fields) != 4:
                raise MalformedScoreLine(f"{path}:{lineno}: expected 4 columns: {stripped!r}")
            pair_id, instance_id, raw_key, raw_p = fields
            try:
                key = SenseKey.parse(raw_key)
                p_yes = float(raw_p)
            except (MalformedSenseKey, ValueError) as exc:
                raise MalformedScoreLine(f"{path}:{lineno}: {exc}") from exc
            if not 0.0 <= p_yes <= 1.0:
                raise OutOfRangeProbability(f"{path}:{lineno}: p_yes={raw_p} outside [0, 1]")
            records.append(ScoreRecord(pair_id, instance_id, key, p_yes))
    return records


def write_scores(records: Iterable[ScoreRecord], out) -> int:
    """Write score records as TSV, probabilities at six decimals."""
    count = 0
    with atomic_write(out) as handle:
        handle.write("\t".join(SCORE_COLUMNS) + "\n")
        for rec in records:
            handle.write(
                f"{rec.pair_id}\t{rec.instance_id}\t{rec.sense_key.raw}\t{rec.p_yes:.6f}\n"
            )
            count += 1
    return count


def aggregate(
    scores: Sequence[ScoreRecord],
    pair_sets: Sequence[PairSet],
    inv: SenseInventory | None = None,
    policy: BackoffPolicy = BackoffPolicy.FIRST_SENSE,
    skipped: Sequence[TargetInstance] = (),
    strict: bool = True,
) -> list[Prediction]:
    """Turn per-pair scores into one prediction per target.

    Strict mode demands a one-to-one match between score rows and pair
    records (ScoreCoverageGap otherwise); the permissive mode treats
    missing pairs as p_yes = 0 and ignores stray rows.  ``skipped``
    carries the no-candidate targets for first-sense backoff.
    """
    by_pair: dict[str, float] = {}
    for rec in scores:
        if rec.pair_id in by_pair:
            raise DuplicateScore(f"pair {rec.pair_id!r} scored more than once")
        by_pair[rec.pair_id] = rec.p_yes

    known_pairs = {rec.pair_id for ps in pair_sets for rec in ps.records}
    if strict:
        missing = sorted(known_pairs - by_pair.keys())
        extra = sorted(by_pair.keys() - known_pairs)
        if missing or extra:
            raise ScoreCoverageGap(
                f"score coverage mismatch: {len(missing)} pair(s) unscored, "
                f"{len(extra)} stray score(s)"
                + (f"; first missing {missing[0]!r}" if missing else "")
                + (f"; first stray {extra[0]!r}" if extra else "")
            )

    predictions: list[Prediction] = []
    for pair_set in pair_sets:
        best_rec = None
        best_p = -1.0
        for rec in pair_set.records:
            p = by_pair.get(rec.pair_id, 0.0)
            if p > best_p:
                best_p = p
                best_rec = rec
        assert best_rec is not None
        predictions.append(
            Prediction(pair_set.instance_id, best_rec.sense_key, PredictionSource.ARGMAX)
        )

    for target in skipped:
        cand = None
        if policy is BackoffPolicy.FIRST_SENSE and inv is not None:
            cand = first_sense(inv, target.lemma)
        if cand is not None:
            predictions.append(
                Prediction(target.instance_id, cand.key, PredictionSource.BACKOFF_FIRST_SENSE)
            )
        else:
            predictions.append(
                Prediction(target.instance_id, None, PredictionSource.UNANSWERED)
            )
    return predictions


@dataclass
class Cell:
    """Micro-averaged counts for one report cell."""

    attempted: int = 0
    correct: int = 0
    total: int = 0

    @property
    def precision(self) -> float:
        return self.correct / self.attempted if self.attempted else 0.0

    @property
    def recall(self) -> float:
        return self.correct / self.total if self.total else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def add(self, attempted: bool, correct: bool) -> None:
        self.total += 1
        if attempted:
            self.attempted += 1
        if correct:
            self.correct += 1


@dataclass
class EvalReport:
    """Per-dataset and per-POS micro F1, plus the test-set concatenation.

    The concatenation cells cover every non-dev dataset; the dev set gets
    its own row only.  ``source_counts`` records how many predictions each
    backoff path produced so their effect stays auditable, and
    ``ceilings`` can carry the per-dataset oracle ceiling implied by gold
    keys that no candidate covers.
    """

    datasets: dict[str, Cell] = field(default_factory=dict)
    pos: dict[POS, Cell] = field(default_factory=dict)
    all: Cell = field(default_factory=Cell)
    dev_names: frozenset[str] = frozenset()
    source_counts: dict[str, Counter] = field(default_factory=dict)
    ceilings: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class InstanceTag:
    """Dataset membership and POS of one gold instance."""

    dataset: str
    pos: POS


def evaluate(
    predictions: Sequence[Prediction],
    gold: GoldKeys,
    tags: dict[str, InstanceTag],
    dev_names: Iterable[str] = (),
) -> EvalReport:
    """Micro-averaged precision/recall/F1 per dataset and per POS.

    A prediction is correct when its key is a member of the instance's
    gold set.  Every gold instance counts toward totals whether or not a
    prediction exists for it.
    """
    report = EvalReport(dev_names=frozenset(dev_names))
    by_instance: dict[str, Prediction] = {}
    for pred in predictions:
        if pred.instance_id not in gold:
            raise UnknownInstance(f"prediction for unknown instance {pred.instance_id!r}")
        by_instance[pred.instance_id] = pred

    for name in {tag.dataset for tag in tags.values()}:
        report.datasets[name] = Cell()
        report.source_counts[name] = Counter()
    for pos in POS_ORDER:
        report.pos[pos] = Cell()

    for instance_id, tag in tags.items():
        gold_set = gold.get(instance_id)
        if gold_set is None:
            raise UnknownInstance(f"no gold keys for tagged instance {instance_id!r}")
        pred = by_instance.get(instance_id)
        attempted = pred is not None and pred.predicted_key is not None
        correct = attempted and pred.predicted_key in gold_set
        source = pred.source.value if pred is not None else PredictionSource.UNANSWERED.value
        report.datasets[tag.dataset].add(attempted, correct)
        report.source_counts[tag.dataset][source] += 1
        if tag.dataset not in report.dev_names:
            report.pos[tag.pos].add(attempted, correct)
            report.all.add(attempted, correct)
    return report


def inventory_gap(
    targets: Sequence[TargetInstance],
    gold: GoldKeys,
    candidate_keys: dict[str, frozenset[str]],
) -> int:
    """Count gold instances none of whose keys appear among candidates.

    ``candidate_keys`` maps instance_id to the raw keys its pair set
    offers; instances with no entry (no candidates) count as gaps.
    """
    gap = 0
    for target in targets:
        gold_set = gold.get(target.instance_id)
        if gold_set is None:
            continue
        offered = candidate_keys.get(target.instance_id, frozenset())
        if not any(key.raw in offered for key in gold_set):
            gap += 1
    return gap


def write_predictions(predictions: Iterable[Prediction], out) -> int:
    """Write ``instance_id sense_key`` lines; unanswered targets are omitted."""
    count = 0
    with atomic_write(out) as handle:
        for pred in predictions:
            if pred.predicted_key is None:
                continue
            handle.write(f"{pred.instance_id} {pred.predicted_key.raw}\n")
            count += 1
    return count


def read_predictions(path) -> list[Prediction]:
    """Read ``instance_id sense_key`` lines back into predictions."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"prediction file not found: {path}")
    out: list[Prediction] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            fields = stripped.split()
            if len(fields) != 2:
                raise MalformedLine(path, lineno, stripped, "expected 'instance_id sense_key'")
            out.append(
                Prediction(fields[0], SenseKey.parse(fields[1]), PredictionSource.ARGMAX)
            )
    return out


def _pct(value: float) -> str:
    return f"{100.0 * value:.1f}"


def render_table(report: EvalReport, dataset_order: Sequence[str] | None = None) -> str:
    """Aligned text table: one F1 row in dev | test | POS | All layout,
    then per-dataset detail with backoff-path counts."""
    names = dataset_order if dataset_order is not None else sorted(report.datasets)
    dev = [n for n in names if n in report.dev_names]
    test = [n for n in names if n not in report.dev_names]
    headers = dev + test + [str(p) for p in POS_ORDER] + ["All"]
    cells = (
        [report.datasets[n] for n in dev]
        + [report.datasets[n] for n in test]
        + [report.pos[p] for p in POS_ORDER]
        + [report.all]
    )
    width = max(8, *(len(h) for h in headers)) + 2
    lines = [
        "".join(h.rjust(width) for h in ["F1"] + headers),
        "".join(v.rjust(width) for v in ["%"] + [_pct(c.f1) for c in cells]),
        "",
        "dataset".ljust(12)
        + "".join(h.rjust(11) for h in ("attempted", "correct", "total", "P", "R", "F1")),
    ]
    for name in names:
        cell = report.datasets[name]
        row = [
            str(cell.attempted),
            str(cell.correct),
            str(cell.total),
            _pct(cell.precision),
            _pct(cell.recall),
            _pct(cell.f1),
        ]
        suffix = "  (dev)" if name in report.dev_names else ""
        lines.append(name.ljust(12) + "".join(v.rjust(11) for v in row) + suffix)
    lines.append("")
    for name in names:
        counts = report.source_counts.get(name, Counter())
        parts = [f"{s.value}={counts.get(s.value, 0)}" for s in PredictionSource]
        lines.append(f"sources {name}: " + " ".join(parts))
        if name in report.ceilings:
            lines.append(f"oracle ceiling {name}: {report.ceilings[name]:.1f}")
    return "\n".join(lines) + "\n"


def render_kv(report: EvalReport, dataset_order: Sequence[str] | None = None) -> str:
    """Machine-readable key-value rendering (one metric per line)."""
    names = dataset_order if dataset_order is not None else sorted(report.datasets)
    lines = []
    for name in names:
        cell = report.datasets[name]
        lines.append(f"{name}.attempted {cell.attempted}")
        lines.append(f"{name}.correct {cell.correct}")
        lines.append(f"{name}.total {cell.total}")
        lines.append(f"{name}.precision {_pct(cell.precision)}")
        lines.append(f"{name}.recall {_pct(cell.recall)}")
        lines.append(f"{name}.f1 {_pct(cell.f1)}")
        for source, count in sorted(report.source_counts.get(name, Counter()).items()):
            lines.append(f"{name}.source.{source} {count}")
        if name in report.ceilings:
            lines.append(f"{name}.oracle_ceiling {report.ceilings[name]:.1f}")
    for pos in POS_ORDER:
        lines.append(f"pos.{pos.name.lower()}.f1 {_pct(report.pos[pos].f1)}")
    lines.append(f"all.attempted {report.all.attempted}")
    lines.append(f"all.correct {report.all.correct}")
    lines.append(f"all.total {report.all.total}")
    lines.append(f"all.f1 {_pct(report.all.f1)}")
    return "\n".join(lines) + "\n"
