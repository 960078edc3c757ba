import os
from pathlib import Path

import pytest

from glosswsd import corpus as corpus_mod
from glosswsd.manifest import load_manifest
from glosswsd.senses import GlossMode, load_inventory

DATA_DIR = Path(__file__).parent / "data"

# Real-corpus manifest for full-scale acceptance runs; see README for the
# expected layout.  Unset in environments without the corpora.
REAL_MANIFEST_ENV = "GLOSSWSD_MANIFEST"


@pytest.fixture(scope="session")
def wn_dir() -> Path:
    return DATA_DIR / "wn_mini" / "dict"


@pytest.fixture(scope="session")
def manifest_path() -> Path:
    return DATA_DIR / "manifest.txt"


@pytest.fixture(scope="session")
def manifest(manifest_path):
    return load_manifest(manifest_path)


@pytest.fixture(scope="session")
def inventory(wn_dir):
    return load_inventory(wn_dir, GlossMode.DEFINITION_ONLY)


@pytest.fixture(scope="session")
def full_gloss_inventory(wn_dir):
    return load_inventory(wn_dir, GlossMode.FULL_GLOSS)


def _dataset(name: str):
    sentences = corpus_mod.load_corpus(DATA_DIR / "corpora" / f"{name}.data.xml")
    gold = corpus_mod.load_gold(DATA_DIR / "corpora" / f"{name}.gold.key.txt")
    return sentences, corpus_mod.instances(sentences), gold


@pytest.fixture(scope="session")
def minisemcor():
    return _dataset("minisemcor")


@pytest.fixture(scope="session")
def minia():
    return _dataset("minia")


@pytest.fixture(scope="session")
def minib():
    return _dataset("minib")


@pytest.fixture(scope="session")
def minidev():
    return _dataset("minidev")


def real_manifest_or_none():
    path = os.environ.get(REAL_MANIFEST_ENV)
    if path and Path(path).is_file():
        return Path(path)
    return None
