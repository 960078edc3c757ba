"""Training loop and checkpoint handling."""

from __future__ import annotations

import logging
from pathlib import Path

import torch
from torch.utils.data import DataLoader, Dataset
from transformers import BertConfig, BertModel, BertTokenizer

from . import encoding
from .config import TrainConfig
from .errors import CheckpointError
from .model import PairClassifier, encoder_config
from .pairfile import Pair, check_mode, read_pairs, require_labels

log = logging.getLogger(__name__)


class PairDataset(Dataset):
    def __init__(self, pairs: list[Pair], tokenizer: BertTokenizer, max_len: int):
        self.encoded = [encoding.encode_pair(p, tokenizer, max_len) for p in pairs]
        self.labels = [p.label for p in pairs]

    def __len__(self):
        return len(self.encoded)

    def __getitem__(self, index):
        return self.encoded[index], self.labels[index]


def _collate_with_labels(batch, pad_id: int):
    encoded, labels = zip(*batch)
    tensors = encoding.collate(list(encoded), pad_id)
    tensors["labels"] = torch.tensor(labels, dtype=torch.long)
    return tensors


def build_tokenizer_and_encoder(cfg: TrainConfig, pairs: list[Pair]):
    """Pretrained encoder when requested and reachable, else scratch."""
    if cfg.encoder == "scratch":
        vocab = encoding.build_vocab(pairs)
        tokenizer = encoding.tokenizer_from_vocab(vocab)
        encoder = BertModel(encoder_config(cfg, len(vocab)))
        return tokenizer, encoder, vocab
    try:
        tokenizer = BertTokenizer.from_pretrained(cfg.encoder)
        encoder = BertModel.from_pretrained(cfg.encoder)
    except Exception as exc:  # hub failures surface as OSError, RuntimeError, ...
        raise CheckpointError(
            f"pretrained encoder {cfg.encoder!r} not loadable (offline?); "
            f"use --encoder scratch for a randomly initialized one"
        ) from exc
    vocab = [tok for tok, _ in sorted(tokenizer.get_vocab().items(), key=lambda kv: kv[1])]
    return tokenizer, encoder, vocab


def train(pairs_path, cfg: TrainConfig, checkpoint_path) -> list[float]:
    """Fine-tune on a labeled pair file; returns per-step losses."""
    pairs = read_pairs(pairs_path)
    require_labels(pairs)
    check_mode(pairs, cfg.variant)

    torch.manual_seed(cfg.seed)
    tokenizer, encoder, vocab = build_tokenizer_and_encoder(cfg, pairs)
    model = PairClassifier(encoder, cfg.variant, cfg.dropout)
    model.train()

    dataset = PairDataset(pairs, tokenizer, cfg.max_sequence_length)
    generator = torch.Generator().manual_seed(cfg.seed)
    loader = DataLoader(
        dataset,
        batch_size=cfg.batch_size,
        shuffle=True,
        generator=generator,
        collate_fn=lambda b: _collate_with_labels(b, tokenizer.pad_token_id),
    )
    optimizer = torch.optim.AdamW(model.parameters(), lr=cfg.learning_rate)
    loss_fn = torch.nn.CrossEntropyLoss()

    history: list[float] = []
    for epoch in range(cfg.epochs):
        epoch_losses = []
        for batch in loader:
            labels = batch.pop("labels")
            optimizer.zero_grad()
            logits = model(**batch)
            loss = loss_fn(logits, labels)
            loss.backward()
            optimizer.step()
            history.append(loss.item())
            epoch_losses.append(loss.item())
        log.info("epoch %d/%d: mean loss %.4f over %d steps",
                 epoch + 1, cfg.epochs, sum(epoch_losses) / len(epoch_losses),
                 len(epoch_losses))

    save_checkpoint(model, cfg, vocab, checkpoint_path)
    return history


def save_checkpoint(model: PairClassifier, cfg: TrainConfig, vocab: list[str], path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    torch.save(
        {
            "config": cfg.to_dict(),
            "encoder_config": model.encoder.config.to_dict(),
            "vocab": vocab,
            "model_state": model.state_dict(),
        },
        path,
    )


def load_checkpoint(path, variant: str | None = None):
    path = Path(path)
    if not path.is_file():
        raise CheckpointError(f"checkpoint not found: {path}")
    payload = torch.load(path, map_location="cpu", weights_only=False)
    try:
        cfg = TrainConfig.from_dict(payload["config"])
        vocab = payload["vocab"]
        state = payload["model_state"]
        enc_cfg = payload["encoder_config"]
    except KeyError as exc:
        raise CheckpointError(f"{path}: missing checkpoint field {exc}") from exc
    if variant is not None and variant != cfg.variant:
        raise CheckpointError(
            f"checkpoint was trained as {cfg.variant!r}, not {variant!r}"
        )
    encoder = BertModel(BertConfig.from_dict(enc_cfg))
    model = PairClassifier(encoder, cfg.variant, cfg.dropout)
    model.load_state_dict(state)
    model.eval()
    tokenizer = encoding.tokenizer_from_vocab(vocab)
    return model, tokenizer, cfg
