import pytest

from glosswsd.errors import ManifestError, MissingFile
from glosswsd.manifest import load_manifest
from glosswsd.pairs import PairMode
from glosswsd.scoring import BackoffPolicy
from glosswsd.senses import GlossMode

from conftest import DATA_DIR


def write_manifest(tmp_path, body: str):
    path = tmp_path / "manifest.txt"
    path.write_text(body)
    return path


WN = DATA_DIR / "wn_mini" / "dict"
XML = DATA_DIR / "corpora" / "minia.data.xml"
GOLD = DATA_DIR / "corpora" / "minia.gold.key.txt"


def test_loads_fixture_manifest(manifest):
    assert [e.name for e in manifest.eval_entries()] == ["minia", "minib", "minidev"]
    assert manifest.training.name == "minisemcor"
    assert manifest.dev_names() == frozenset({"minidev"})
    assert manifest.gloss_mode is GlossMode.DEFINITION_ONLY
    assert manifest.pair_mode is PairMode.PLAIN
    assert manifest.backoff is BackoffPolicy.FIRST_SENSE


def test_option_lines_parsed(tmp_path):
    path = write_manifest(
        tmp_path,
        f"wordnet {WN}\ndataset a {XML} {GOLD}\n"
        "option gloss_mode full_gloss\noption pair_mode weak_supervision\n"
        "option backoff none\n",
    )
    manifest = load_manifest(path)
    assert manifest.gloss_mode is GlossMode.FULL_GLOSS
    assert manifest.pair_mode is PairMode.WEAK_SUPERVISION
    assert manifest.backoff is BackoffPolicy.NONE


def test_duplicate_dataset_name_rejected(tmp_path):
    path = write_manifest(
        tmp_path,
        f"wordnet {WN}\ndataset a {XML} {GOLD}\ndataset a {XML} {GOLD}\n",
    )
    with pytest.raises(ManifestError):
        load_manifest(path)


def test_missing_wordnet_line_rejected(tmp_path):
    path = write_manifest(tmp_path, f"dataset a {XML} {GOLD}\n")
    with pytest.raises(ManifestError):
        load_manifest(path)


def test_nonexistent_dataset_file_rejected(tmp_path):
    path = write_manifest(
        tmp_path, f"wordnet {WN}\ndataset a {tmp_path / 'nope.xml'} {GOLD}\n"
    )
    with pytest.raises(MissingFile):
        load_manifest(path)


def test_bad_option_value_rejected(tmp_path):
    path = write_manifest(
        tmp_path,
        f"wordnet {WN}\ndataset a {XML} {GOLD}\noption gloss_mode sometimes\n",
    )
    with pytest.raises(ManifestError):
        load_manifest(path)


def test_unknown_directive_rejected(tmp_path):
    path = write_manifest(tmp_path, f"wordnet {WN}\nfrobnicate yes\n")
    with pytest.raises(ManifestError):
        load_manifest(path)


def test_unknown_dataset_lookup(manifest):
    with pytest.raises(ManifestError):
        manifest.dataset("nope")
