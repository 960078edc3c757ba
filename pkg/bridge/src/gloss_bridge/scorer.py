"""Score a pair file with a trained checkpoint.

Writes the tab-separated score format the evaluation pipeline reads:
``pair_id instance_id sense_key p_yes`` with six-decimal probabilities.
"""

from __future__ import annotations

from pathlib import Path

import torch

from . import encoding
from .pairfile import check_mode, read_pairs
from .training import load_checkpoint

SCORE_HEADER = "pair_id\tinstance_id\tsense_key\tp_yes"


def score(checkpoint_path, pairs_path, out_path, batch_size: int = 64,
          variant: str | None = None) -> int:
    """Write one score row per pair; returns the number of rows."""
    model, tokenizer, cfg = load_checkpoint(checkpoint_path, variant)
    pairs = read_pairs(pairs_path)
    check_mode(pairs, cfg.variant)

    rows: list[str] = []
    with torch.no_grad():
        for start in range(0, len(pairs), batch_size):
            chunk = pairs[start : start + batch_size]
            encoded = [
                encoding.encode_pair(p, tokenizer, cfg.max_sequence_length) for p in chunk
            ]
            batch = encoding.collate(encoded, tokenizer.pad_token_id)
            probs = torch.softmax(model(**batch), dim=-1)[:, 1]
            for pair, p_yes in zip(chunk, probs.tolist()):
                rows.append(
                    f"{pair.pair_id}\t{pair.instance_id}\t{pair.sense_key}\t{p_yes:.6f}"
                )

    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join([SCORE_HEADER] + rows) + "\n", encoding="utf-8")
    return len(rows)


def argmax_recovery(score_path, pairs_path) -> float:
    """Fraction of instances whose top-scored pair is labeled yes.

    Only meaningful on labeled pair files (training-side sanity check).
    """
    pairs = {p.pair_id: p for p in read_pairs(pairs_path)}
    best: dict[str, tuple[float, int]] = {}
    with open(score_path, encoding="utf-8") as handle:
        handle.readline()
        for line in handle:
            pair_id, instance_id, _key, p_yes = line.rstrip("\n").split("\t")
            candidate = (float(p_yes), pairs[pair_id].label)
            if instance_id not in best or candidate[0] > best[instance_id][0]:
                best[instance_id] = candidate
    if not best:
        return 0.0
    hits = sum(1 for _, label in best.values() if label == 1)
    return hits / len(best)
