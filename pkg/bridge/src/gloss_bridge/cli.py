"""CLI: ``gloss-bridge train`` and ``gloss-bridge score``."""

from __future__ import annotations

import argparse
import logging
import sys

from .config import VARIANTS, TrainConfig
from .errors import BridgeError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gloss-bridge",
        description="fine-tune an encoder on context-gloss pair files and emit score files",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    defaults = TrainConfig()
    p = sub.add_parser("train", help="fine-tune on a labeled pair file")
    p.add_argument("--pairs", required=True)
    p.add_argument("--checkpoint", required=True, help="output checkpoint path")
    p.add_argument("--variant", choices=VARIANTS, default=defaults.variant)
    p.add_argument("--learning-rate", type=float, default=defaults.learning_rate)
    p.add_argument("--batch-size", type=int, default=defaults.batch_size)
    p.add_argument("--epochs", type=int, default=defaults.epochs)
    p.add_argument("--dropout", type=float, default=defaults.dropout)
    p.add_argument("--max-sequence-length", type=int, default=defaults.max_sequence_length)
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--encoder", default=defaults.encoder,
                   help="pretrained model name, or 'scratch' for random init")
    p.add_argument("--hidden-size", type=int, default=defaults.hidden_size)
    p.add_argument("--num-layers", type=int, default=defaults.num_layers)
    p.add_argument("--num-heads", type=int, default=defaults.num_heads)
    p.add_argument("--intermediate-size", type=int, default=defaults.intermediate_size)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("score", help="score a pair file with a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--batch-size", type=int, default=64)
    p.add_argument("--variant", choices=VARIANTS,
                   help="assert the checkpoint was trained with this variant")
    p.set_defaults(func=cmd_score)
    return parser


def cmd_train(args) -> int:
    from .training import train

    cfg = TrainConfig(
        variant=args.variant,
        learning_rate=args.learning_rate,
        batch_size=args.batch_size,
        epochs=args.epochs,
        dropout=args.dropout,
        max_sequence_length=args.max_sequence_length,
        seed=args.seed,
        encoder=args.encoder,
        hidden_size=args.hidden_size,
        num_layers=args.num_layers,
        num_heads=args.num_heads,
        intermediate_size=args.intermediate_size,
    )
    history = train(args.pairs, cfg, args.checkpoint)
    print(f"trained {cfg.variant} for {cfg.epochs} epoch(s), {len(history)} steps; "
          f"first loss {history[0]:.4f}, last loss {history[-1]:.4f}")
    print(f"checkpoint written to {args.checkpoint}")
    return 0


def cmd_score(args) -> int:
    from .scorer import score

    count = score(args.checkpoint, args.pairs, args.out, args.batch_size, args.variant)
    print(f"wrote {count} scores to {args.out}")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BridgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
