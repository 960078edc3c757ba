"""Context-gloss pairing toolkit for English all-words WSD.

Submodules: senses (WordNet inventory), corpus (unified-format readers),
pairs (context-gloss pair construction), scoring (argmax inference and
F1 reports), baselines (MFS and gloss overlap), manifest and cli.
"""

__version__ = "0.1.0"
