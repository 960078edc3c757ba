"""Encoder fine-tuning bridge for context-gloss pair files."""

__version__ = "0.1.0"
