#!/usr/bin/env python3
"""Independent inventory-gap counter.

For every dataset in a run manifest, count the gold instances none of
whose keys appear among the sense keys that index.sense lists for the
instance's lemma (any part of speech).  These instances bound the best
possible oracle F1, so the count is recomputed here from the raw files
on purpose, without importing the pipeline package.

Usage: python3 scripts/inventory_gap.py <manifest> [dataset ...]
Output: one line per dataset: ``name gap total ceiling_pct``.
"""

import sys
import xml.etree.ElementTree as ET
from pathlib import Path


def read_manifest(path):
    base = Path(path).parent
    wordnet = None
    datasets = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        fields = line.split("#", 1)[0].split()
        if not fields:
            continue
        if fields[0] == "wordnet":
            wordnet = base / fields[1]
        elif fields[0] in ("dataset", "train"):
            datasets.append((fields[1], base / fields[2], base / fields[3]))
    if wordnet is None:
        sys.exit("manifest has no wordnet line")
    return wordnet, datasets


def keys_by_lemma(index_sense):
    table = {}
    with open(index_sense, encoding="utf-8") as handle:
        for line in handle:
            key = line.split(" ", 1)[0]
            lemma = key.split("%", 1)[0]
            table.setdefault(lemma, set()).add(key)
    return table


def instance_lemmas(xml_path):
    lemmas = {}
    for _, element in ET.iterparse(xml_path):
        if element.tag == "instance":
            lemmas[element.get("id")] = element.get("lemma", "").lower().replace(" ", "_")
    return lemmas


def gold_keys(gold_path):
    table = {}
    for line in Path(gold_path).read_text(encoding="utf-8").splitlines():
        fields = line.split()
        if fields:
            table[fields[0]] = set(fields[1:])
    return table


def main(argv):
    if len(argv) < 2:
        sys.exit(__doc__)
    wordnet, datasets = read_manifest(argv[1])
    wanted = set(argv[2:])
    lemma_keys = keys_by_lemma(wordnet / "index.sense")
    for name, xml_path, gold_path in datasets:
        if wanted and name not in wanted:
            continue
        lemmas = instance_lemmas(xml_path)
        gold = gold_keys(gold_path)
        gap = 0
        for instance_id, lemma in lemmas.items():
            offered = lemma_keys.get(lemma, set())
            if not gold.get(instance_id, set()) & offered:
                gap += 1
        total = len(lemmas)
        ceiling = 100.0 * (1 - gap / total) if total else 100.0
        print(f"{name} {gap} {total} {ceiling:.1f}")


if __name__ == "__main__":
    main(sys.argv)
