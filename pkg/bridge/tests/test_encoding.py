import pytest
import torch

from gloss_bridge.encoding import (
    build_vocab,
    collate,
    encode_pair,
    tokenizer_from_vocab,
)
from gloss_bridge.errors import SpanError
from gloss_bridge.model import pool_target_mean
from gloss_bridge.pairfile import Pair


def make_pair(context, gloss, start, end):
    return Pair("x#1", "x", 1, "wug0%1:09:00::", start, end, context, gloss)


@pytest.fixture(scope="module")
def tokenizer():
    # "research" splits into two wordpieces; everything else is whole-word
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
             "res", "##earch", "the", "stopped", "quickly", "a", "halt", '"']
    return tokenizer_from_vocab(vocab)


class TestEncodePair:
    def test_layout_and_segments(self, tokenizer):
        pair = make_pair("the research stopped", "a halt", 1, 2)
        enc = encode_pair(pair, tokenizer, 32)
        tokens = tokenizer.convert_ids_to_tokens(enc.input_ids)
        assert tokens == ["[CLS]", "the", "res", "##earch", "stopped", "[SEP]",
                          "a", "halt", "[SEP]"]
        assert enc.token_type_ids == [0] * 6 + [1] * 3

    def test_multi_subtoken_target_positions(self, tokenizer):
        pair = make_pair("the research stopped", "a halt", 1, 2)
        enc = encode_pair(pair, tokenizer, 32)
        tokens = tokenizer.convert_ids_to_tokens(enc.input_ids)
        assert [tokens[i] for i in enc.target_positions] == ["res", "##earch"]

    def test_single_subtoken_target(self, tokenizer):
        pair = make_pair("the research stopped", "a halt", 2, 3)
        enc = encode_pair(pair, tokenizer, 32)
        tokens = tokenizer.convert_ids_to_tokens(enc.input_ids)
        assert [tokens[i] for i in enc.target_positions] == ["stopped"]

    def test_marked_span_includes_quotes(self, tokenizer):
        pair = make_pair('the " research " stopped', "a halt", 1, 4)
        enc = encode_pair(pair, tokenizer, 32)
        tokens = tokenizer.convert_ids_to_tokens(enc.input_ids)
        assert [tokens[i] for i in enc.target_positions] == ['"', "res", "##earch", '"']

    def test_context_truncated_before_gloss(self, tokenizer):
        context = "the " * 20 + "research"
        pair = make_pair(context.strip(), "a halt quickly", 20, 21)
        enc = encode_pair(pair, tokenizer, 16)
        tokens = tokenizer.convert_ids_to_tokens(enc.input_ids)
        assert len(tokens) <= 16
        # gloss survives whole; target survives inside the window
        assert tokens[-4:] == ["a", "halt", "quickly", "[SEP]"]
        assert [tokens[i] for i in enc.target_positions] == ["res", "##earch"]

    def test_gloss_truncated_last(self, tokenizer):
        pair = make_pair("research " * 4, "a halt quickly the stopped", 0, 4)
        enc = encode_pair(pair, tokenizer, 12)
        tokens = tokenizer.convert_ids_to_tokens(enc.input_ids)
        assert len(tokens) <= 12
        assert [tokens[i] for i in enc.target_positions] == ["res", "##earch"] * 4

    def test_span_outside_context_rejected(self, tokenizer):
        pair = make_pair("the research", "a halt", 5, 6)
        with pytest.raises(SpanError):
            encode_pair(pair, tokenizer, 32)

    def test_unknown_words_become_unk(self, tokenizer):
        pair = make_pair("zzz research", "a halt", 1, 2)
        enc = encode_pair(pair, tokenizer, 32)
        assert tokenizer.convert_ids_to_tokens(enc.input_ids)[1] == "[UNK]"


class TestCollate:
    def test_padding_and_masks(self, tokenizer):
        pairs = [
            make_pair("the research stopped", "a halt", 1, 2),
            make_pair("research", "halt", 0, 1),
        ]
        encoded = [encode_pair(p, tokenizer, 32) for p in pairs]
        batch = collate(encoded, tokenizer.pad_token_id)
        assert batch["input_ids"].shape == batch["attention_mask"].shape
        lengths = [len(e.input_ids) for e in encoded]
        assert batch["attention_mask"].sum(dim=1).tolist() == lengths
        assert batch["target_mask"].sum(dim=1).tolist() == [2, 2]


class TestTargetPooling:
    def test_mean_of_one_is_identity(self):
        hidden = torch.randn(1, 5, 8)
        mask = torch.zeros(1, 5, dtype=torch.bool)
        mask[0, 3] = True
        pooled = pool_target_mean(hidden, mask)
        assert torch.allclose(pooled[0], hidden[0, 3])

    def test_mean_of_two(self):
        hidden = torch.randn(1, 5, 8)
        mask = torch.zeros(1, 5, dtype=torch.bool)
        mask[0, 1] = mask[0, 4] = True
        pooled = pool_target_mean(hidden, mask)
        assert torch.allclose(pooled[0], (hidden[0, 1] + hidden[0, 4]) / 2)


def test_build_vocab_covers_pair_texts(plain_pairs_path):
    from gloss_bridge.pairfile import read_pairs

    pairs = read_pairs(plain_pairs_path)
    vocab = build_vocab(pairs)
    tok = tokenizer_from_vocab(vocab)
    enc = encode_pair(pairs[0], tok, 64)
    assert tok.unk_token_id not in enc.input_ids
