"""Tokenization and example encoding for context-gloss pairs.

Each pair becomes ``[CLS] context [SEP] gloss [SEP]`` with segment ids
0/1.  The context is tokenized word by word so the whitespace-token
target span maps onto subtoken positions; when the sequence exceeds the
length budget the context side is truncated first (keeping a window
around the target), then the gloss.
"""

from __future__ import annotations

import tempfile
from dataclasses import dataclass
from pathlib import Path

import torch
from transformers import BertTokenizer

from .errors import SpanError
from .pairfile import Pair

SPECIALS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")


def build_vocab(pairs: list[Pair]) -> list[str]:
    """Whole-word vocabulary over the pair texts, specials first."""
    words: set[str] = set()
    for pair in pairs:
        words.update(w.lower() for w in pair.context_text.split())
        words.update(w.lower() for w in pair.gloss_text.split())
    return list(SPECIALS) + sorted(words)


def write_vocab(tokens: list[str], path) -> None:
    Path(path).write_text("\n".join(tokens) + "\n", encoding="utf-8")


def tokenizer_from_vocab(tokens: list[str]) -> BertTokenizer:
    with tempfile.TemporaryDirectory() as tmp:
        vocab_path = Path(tmp) / "vocab.txt"
        write_vocab(tokens, vocab_path)
        return BertTokenizer(str(vocab_path), do_lower_case=True)


@dataclass
class Encoded:
    input_ids: list[int]
    token_type_ids: list[int]
    target_positions: list[int]  # subtoken indices of the target word


def encode_pair(pair: Pair, tokenizer: BertTokenizer, max_len: int) -> Encoded:
    context_words = pair.context_text.split()
    if not 0 <= pair.target_start < pair.target_end <= len(context_words):
        raise SpanError(
            f"pair {pair.pair_id}: span ({pair.target_start}, {pair.target_end}) "
            f"outside context of {len(context_words)} tokens"
        )

    ctx_sub: list[str] = []
    word_ranges: list[tuple[int, int]] = []
    for word in context_words:
        pieces = tokenizer.tokenize(word) or [tokenizer.unk_token]
        word_ranges.append((len(ctx_sub), len(ctx_sub) + len(pieces)))
        ctx_sub.extend(pieces)
    span_lo = word_ranges[pair.target_start][0]
    span_hi = word_ranges[pair.target_end - 1][1]

    gloss_sub = tokenizer.tokenize(pair.gloss_text) or [tokenizer.unk_token]

    budget = max_len - 3  # [CLS] and two [SEP]
    ctx_budget = budget - len(gloss_sub)
    span_len = span_hi - span_lo
    if ctx_budget < span_len:
        # gloss must shrink so at least the target survives
        ctx_budget = span_len
        gloss_sub = gloss_sub[: budget - ctx_budget]
        if not gloss_sub:
            raise SpanError(
                f"pair {pair.pair_id}: target span of {span_len} subtokens leaves "
                f"no room for the gloss within max length {max_len}"
            )
    if len(ctx_sub) > ctx_budget:
        # window the context around the target span
        lead = (ctx_budget - span_len) // 2
        window_lo = min(max(0, span_lo - lead), len(ctx_sub) - ctx_budget)
        window_hi = window_lo + ctx_budget
        ctx_sub = ctx_sub[window_lo:window_hi]
        span_lo -= window_lo
        span_hi -= window_lo

    tokens = [tokenizer.cls_token] + ctx_sub + [tokenizer.sep_token] + gloss_sub + [tokenizer.sep_token]
    type_ids = [0] * (len(ctx_sub) + 2) + [1] * (len(gloss_sub) + 1)
    positions = list(range(1 + span_lo, 1 + span_hi))
    return Encoded(
        input_ids=tokenizer.convert_tokens_to_ids(tokens),
        token_type_ids=type_ids,
        target_positions=positions,
    )


def collate(batch: list[Encoded], pad_id: int) -> dict[str, torch.Tensor]:
    width = max(len(e.input_ids) for e in batch)
    input_ids = torch.full((len(batch), width), pad_id, dtype=torch.long)
    type_ids = torch.zeros((len(batch), width), dtype=torch.long)
    attention = torch.zeros((len(batch), width), dtype=torch.long)
    target_mask = torch.zeros((len(batch), width), dtype=torch.bool)
    for row, encoded in enumerate(batch):
        n = len(encoded.input_ids)
        input_ids[row, :n] = torch.tensor(encoded.input_ids)
        type_ids[row, :n] = torch.tensor(encoded.token_type_ids)
        attention[row, :n] = 1
        for pos in encoded.target_positions:
            target_mask[row, pos] = True
    return {
        "input_ids": input_ids,
        "token_type_ids": type_ids,
        "attention_mask": attention,
        "target_mask": target_mask,
    }
