"""Binary yes/no classifier over encoded context-gloss pairs.

All variants share the encoder; they differ only in which final hidden
states feed the classification layer: the sequence-start token for
sent_cls and sent_cls_ws, the mean of the target word's subtokens for
token_cls.
"""

from __future__ import annotations

import torch
from torch import nn
from transformers import BertConfig, BertModel

from .config import TrainConfig


def encoder_config(cfg: TrainConfig, vocab_size: int) -> BertConfig:
    return BertConfig(
        vocab_size=vocab_size,
        hidden_size=cfg.hidden_size,
        num_hidden_layers=cfg.num_layers,
        num_attention_heads=cfg.num_heads,
        intermediate_size=cfg.intermediate_size,
        max_position_embeddings=max(cfg.max_sequence_length, 512),
        hidden_dropout_prob=cfg.dropout,
        attention_probs_dropout_prob=cfg.dropout,
    )


def pool_target_mean(hidden: torch.Tensor, target_mask: torch.Tensor) -> torch.Tensor:
    """Mean of the hidden states selected by target_mask, per row.

    A single selected position returns exactly that position's state.
    """
    mask = target_mask.unsqueeze(-1).to(hidden.dtype)
    summed = (hidden * mask).sum(dim=1)
    counts = mask.sum(dim=1).clamp(min=1.0)
    return summed / counts


class PairClassifier(nn.Module):
    def __init__(self, encoder: BertModel, variant: str, dropout: float):
        super().__init__()
        self.encoder = encoder
        self.variant = variant
        self.dropout = nn.Dropout(dropout)
        self.classifier = nn.Linear(encoder.config.hidden_size, 2)

    def forward(self, input_ids, token_type_ids, attention_mask, target_mask):
        hidden = self.encoder(
            input_ids=input_ids,
            token_type_ids=token_type_ids,
            attention_mask=attention_mask,
        ).last_hidden_state
        if self.variant == "token_cls":
            pooled = pool_target_mean(hidden, target_mask)
        else:
            pooled = hidden[:, 0]
        return self.classifier(self.dropout(pooled))
