"""Command-line pipeline: stats, pairs, score, evaluate, mfs, inventory-dump.

Every command is driven by a run manifest (see manifest.py) plus flags
that override its option lines.  Commands write nothing outside their
--out paths, are deterministic, and exit nonzero with a diagnostic on any
error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from pathlib import Path

from . import baselines, corpus, pairs, scoring
from .errors import GlossWsdError, ManifestError
from .fileio import atomic_write
from .manifest import DatasetEntry, Manifest, load_manifest
from .pairs import PairMode
from .scoring import BackoffPolicy, EvalReport, InstanceTag
from .senses import POS_ORDER, GlossMode, SenseInventory, lemma_candidates, load_inventory

log = logging.getLogger(__name__)


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        with atomic_write(out) as handle:
            handle.write(text)
    sys.stdout.write(text)


def _load_entry(entry: DatasetEntry):
    sentences = corpus.load_corpus(entry.xml_path)
    gold = corpus.load_gold(entry.gold_path)
    return sentences, corpus.instances(sentences), gold


def _inventory(manifest: Manifest, args) -> SenseInventory:
    mode = GlossMode(args.gloss_mode) if args.gloss_mode else manifest.gloss_mode
    return load_inventory(manifest.wordnet_dir, mode)


def _pair_mode(manifest: Manifest, args) -> PairMode:
    return PairMode(args.pair_mode) if args.pair_mode else manifest.pair_mode


def _backoff(manifest: Manifest, args) -> BackoffPolicy:
    return BackoffPolicy(args.backoff) if args.backoff else manifest.backoff


def cmd_stats(args) -> int:
    manifest = load_manifest(args.manifest)
    header = ["dataset", "Total"] + [str(p) for p in POS_ORDER]
    rows = [header]
    for entry in manifest.all_entries():
        sentences = corpus.load_corpus(entry.xml_path)
        counts = corpus.count_instances(sentences)
        rows.append(
            [entry.name, str(counts.total)] + [str(counts.count(p)) for p in POS_ORDER]
        )
    widths = [max(len(row[col]) for row in rows) for col in range(len(header))]
    lines = []
    for row in rows:
        cells = [row[0].ljust(widths[0])] + [
            row[col].rjust(widths[col] + 2) for col in range(1, len(header))
        ]
        lines.append("".join(cells))
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def cmd_pairs(args) -> int:
    manifest = load_manifest(args.manifest)
    entry = manifest.dataset(args.dataset)
    inv = _inventory(manifest, args)
    mode = _pair_mode(manifest, args)
    _, targets, gold = _load_entry(entry)
    # gold labels only for the training corpus; evaluation pairs stay unknown
    label_gold = gold if entry.is_training else None
    pair_sets, skipped = pairs.build_all_pairs(targets, inv, mode, label_gold)
    count = pairs.emit_pairs(pair_sets, args.out)
    histogram = Counter(ps.n_candidates for ps in pair_sets)
    print(f"wrote {count} pairs for {len(pair_sets)} instances to {args.out}")
    if skipped:
        print(f"skipped {len(skipped)} instance(s) without candidates")
    print("candidates-per-instance histogram:")
    for n in sorted(histogram):
        print(f"  N={n}: {histogram[n]}")
    return 0


def _score_dataset(manifest, entry, inv, mode, scorer: str):
    _, targets, gold = _load_entry(entry)
    pair_sets, skipped = pairs.build_all_pairs(targets, inv, mode)
    if scorer == "overlap":
        records = baselines.overlap_score_all(pair_sets, targets)
    elif scorer == "oracle":
        records = baselines.oracle_scores(pair_sets, gold)
    elif scorer.startswith("file:"):
        records = scoring.read_scores(scorer[len("file:"):])
    else:
        raise ManifestError(f"unknown scorer {scorer!r}; use overlap, oracle or file:<path>")
    return records, pair_sets, skipped, targets, gold


def cmd_score(args) -> int:
    manifest = load_manifest(args.manifest)
    entry = manifest.dataset(args.dataset)
    inv = _inventory(manifest, args)
    mode = _pair_mode(manifest, args)
    records, _, skipped, _, _ = _score_dataset(manifest, entry, inv, mode, args.scorer)
    count = scoring.write_scores(records, args.out)
    print(f"wrote {count} scores for dataset {entry.name} to {args.out}")
    if skipped:
        print(f"{len(skipped)} instance(s) had no candidates and no scores")
    return 0


def _merge_for_report(per_dataset) -> tuple[list, corpus.GoldKeys, dict]:
    """Namespace instance ids per dataset so they can share one report."""
    merged_gold: dict = {}
    tags: dict[str, InstanceTag] = {}
    merged_preds = []
    for name, preds, gold, pos_by_id in per_dataset:
        for instance_id, keys in gold.items():
            merged_gold[f"{name}::{instance_id}"] = keys
        for instance_id, pos in pos_by_id.items():
            tags[f"{name}::{instance_id}"] = InstanceTag(dataset=name, pos=pos)
        for pred in preds:
            merged_preds.append(
                scoring.Prediction(
                    f"{name}::{pred.instance_id}", pred.predicted_key, pred.source
                )
            )
    return merged_preds, corpus.GoldKeys(merged_gold), tags


def _report_for_scores(manifest, args, dataset_scores: dict[str, str]) -> EvalReport:
    inv = _inventory(manifest, args)
    strict = not args.permissive_scores
    policy = _backoff(manifest, args)
    per_dataset = []
    ceilings: dict[str, float] = {}
    for name, score_path in dataset_scores.items():
        entry = manifest.dataset(name)
        _, targets, gold = _load_entry(entry)
        pair_sets, skipped = pairs.build_all_pairs(targets, inv, PairMode.PLAIN)
        records = scoring.read_scores(score_path)
        preds = scoring.aggregate(records, pair_sets, inv, policy, skipped, strict=strict)
        candidate_keys = {
            ps.instance_id: frozenset(r.sense_key.raw for r in ps.records)
            for ps in pair_sets
        }
        gap = scoring.inventory_gap(targets, gold, candidate_keys)
        ceilings[name] = 100.0 * (1.0 - gap / len(targets)) if targets else 100.0
        pos_by_id = {t.instance_id: t.pos for t in targets}
        per_dataset.append((name, preds, gold, pos_by_id))
        if args.predictions_out:
            out_dir = Path(args.predictions_out)
            scoring.write_predictions(preds, out_dir / f"{name}.key")
    merged_preds, merged_gold, tags = _merge_for_report(per_dataset)
    report = scoring.evaluate(merged_preds, merged_gold, tags, manifest.dev_names())
    report.ceilings.update(ceilings)
    return report


def _report_for_predictions(manifest, args, dataset_preds: dict[str, str]) -> EvalReport:
    per_dataset = []
    for name, pred_path in dataset_preds.items():
        entry = manifest.dataset(name)
        _, targets, gold = _load_entry(entry)
        preds = scoring.read_predictions(pred_path)
        pos_by_id = {t.instance_id: t.pos for t in targets}
        per_dataset.append((name, preds, gold, pos_by_id))
    merged_preds, merged_gold, tags = _merge_for_report(per_dataset)
    return scoring.evaluate(merged_preds, merged_gold, tags, manifest.dev_names())


def _parse_name_paths(values, manifest, dataset_arg) -> dict[str, str]:
    """--scores/--predictions values: PATH (single dataset) or NAME=PATH."""
    out: dict[str, str] = {}
    for value in values:
        if "=" in value:
            name, path = value.split("=", 1)
        elif dataset_arg and dataset_arg != "all":
            name, path = dataset_arg, value
        else:
            raise ManifestError(
                f"--dataset all needs NAME=PATH score/prediction arguments, got {value!r}"
            )
        if name in out:
            raise ManifestError(f"duplicate scores for dataset {name!r}")
        out[name] = path
    return out


def cmd_evaluate(args) -> int:
    manifest = load_manifest(args.manifest)
    if bool(args.scores) == bool(args.predictions):
        raise ManifestError("evaluate needs exactly one of --scores or --predictions")
    if args.dataset == "all":
        wanted = [e.name for e in manifest.eval_entries()]
    else:
        wanted = [manifest.dataset(args.dataset).name]
    if args.scores:
        given = _parse_name_paths(args.scores, manifest, args.dataset)
    else:
        given = _parse_name_paths(args.predictions, manifest, args.dataset)
    missing = [name for name in wanted if name not in given]
    if missing:
        raise ManifestError(f"no scores/predictions given for dataset(s): {', '.join(missing)}")
    ordered = {name: given[name] for name in wanted}
    if args.scores:
        report = _report_for_scores(manifest, args, ordered)
    else:
        report = _report_for_predictions(manifest, args, ordered)
    text = scoring.render_table(report, dataset_order=wanted)
    _write_or_print(text, args.out)
    if args.kv_out:
        _write_or_print_kv(report, wanted, args.kv_out)
    return 0


def _write_or_print_kv(report: EvalReport, order, kv_out: str) -> None:
    with atomic_write(kv_out) as handle:
        handle.write(scoring.render_kv(report, dataset_order=order))


def cmd_mfs(args) -> int:
    manifest = load_manifest(args.manifest)
    if manifest.training is None:
        raise ManifestError("mfs needs a 'train' line in the manifest")
    inv = _inventory(manifest, args)
    _, train_targets, train_gold = _load_entry(manifest.training)
    table = baselines.train_mfs(train_targets, train_gold, inv)
    if table.mismatches:
        log.info("%d training annotation(s) not under their (lemma, POS) entry",
                 len(table.mismatches))
    if args.table_out:
        baselines.save_table(table, args.table_out)

    per_dataset = []
    order = []
    for entry in manifest.eval_entries():
        _, targets, gold = _load_entry(entry)
        preds = [baselines.predict_mfs(table, t, inv) for t in targets]
        pos_by_id = {t.instance_id: t.pos for t in targets}
        per_dataset.append((entry.name, preds, gold, pos_by_id))
        order.append(entry.name)
        if args.predictions_out:
            scoring.write_predictions(preds, Path(args.predictions_out) / f"{entry.name}.key")
    merged_preds, merged_gold, tags = _merge_for_report(per_dataset)
    report = scoring.evaluate(merged_preds, merged_gold, tags, manifest.dev_names())
    text = scoring.render_table(report, dataset_order=order)
    _write_or_print(text, args.out)
    if args.kv_out:
        _write_or_print_kv(report, order, args.kv_out)
    return 0


def cmd_inventory_dump(args) -> int:
    manifest = load_manifest(args.manifest)
    inv = _inventory(manifest, args)
    lines = []
    if args.lemma:
        candidates = lemma_candidates(inv, args.lemma)
    else:
        candidates = sorted(inv.by_key.values(), key=lambda c: c.key.raw)
    for cand in candidates:
        lines.append(
            "\t".join(
                (
                    cand.key.lemma,
                    str(cand.key.pos),
                    str(cand.sense_number),
                    cand.key.raw,
                    cand.gloss,
                )
            )
        )
    _write_or_print("\n".join(lines) + ("\n" if lines else ""), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--manifest", required=True, help="run manifest file")
    shared.add_argument("--gloss-mode", choices=[m.value for m in GlossMode])
    shared.add_argument("--pair-mode", choices=[m.value for m in PairMode])
    shared.add_argument("--backoff", choices=[p.value for p in BackoffPolicy])
    shared.add_argument("--out", help="write the command's main output here as well")

    parser = argparse.ArgumentParser(
        prog="glosswsd",
        description="context-gloss pairing pipeline for all-words WSD",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[shared], help="per-POS instance counts per dataset")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("pairs", parents=[shared], help="emit a context-gloss pair file")
    p.add_argument("--dataset", required=True)
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("score", parents=[shared], help="score a dataset's pairs")
    p.add_argument("--dataset", required=True)
    p.add_argument("--scorer", required=True, help="overlap, oracle, or file:<path>")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("evaluate", parents=[shared], help="F1 report from scores or predictions")
    p.add_argument("--dataset", required=True, help="dataset name or 'all'")
    p.add_argument("--scores", action="append", default=[], metavar="[NAME=]PATH")
    p.add_argument("--predictions", action="append", default=[], metavar="[NAME=]PATH")
    p.add_argument("--strict-scores", dest="permissive_scores", action="store_false",
                   help="require exact score/pair coverage (default)")
    p.add_argument("--permissive-scores", dest="permissive_scores", action="store_true",
                   help="treat unscored pairs as p_yes = 0")
    p.add_argument("--kv-out", help="also write a machine-readable key-value report")
    p.add_argument("--predictions-out", help="directory for per-dataset prediction files")
    p.set_defaults(func=cmd_evaluate, permissive_scores=False)

    p = sub.add_parser("mfs", parents=[shared], help="most-frequent-sense baseline report")
    p.add_argument("--kv-out", help="also write a machine-readable key-value report")
    p.add_argument("--predictions-out", help="directory for per-dataset prediction files")
    p.add_argument("--table-out", help="write the sense frequency table here")
    p.set_defaults(func=cmd_mfs)

    p = sub.add_parser("inventory-dump", parents=[shared], help="dump inventory entries as TSV")
    p.add_argument("--lemma", help="restrict to one lemma")
    p.set_defaults(func=cmd_inventory_dump)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GlossWsdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
