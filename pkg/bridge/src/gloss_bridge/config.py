from __future__ import annotations

from dataclasses import asdict, dataclass, field

VARIANTS = ("sent_cls", "token_cls", "sent_cls_ws")


@dataclass
class TrainConfig:
    """Fine-tuning settings; the defaults follow the published recipe
    (lr 2e-5, batch 64, 4 epochs, dropout 0.1)."""

    variant: str = "sent_cls_ws"
    learning_rate: float = 2e-5
    batch_size: int = 64
    epochs: int = 4
    dropout: float = 0.1
    max_sequence_length: int = 128
    seed: int = 42
    # "bert-base-uncased" loads pretrained weights when reachable;
    # "scratch" builds a randomly initialized encoder from the sizes below
    # with a vocabulary collected from the training pairs.
    encoder: str = "bert-base-uncased"
    hidden_size: int = 768
    num_layers: int = 12
    num_heads: int = 12
    intermediate_size: int = 3072

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "TrainConfig":
        return cls(**data)
