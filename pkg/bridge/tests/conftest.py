import pytest

from synthgen import emit_pairs, generate


@pytest.fixture(scope="session")
def synth_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("synth")
    manifest = generate(root, n_sentences=100)
    emit_pairs(manifest, root / "pairs_plain.tsv", "plain")
    emit_pairs(manifest, root / "pairs_ws.tsv", "weak_supervision")
    return root


@pytest.fixture(scope="session")
def synth_manifest(synth_root):
    return synth_root / "manifest.txt"


@pytest.fixture(scope="session")
def plain_pairs_path(synth_root):
    return synth_root / "pairs_plain.tsv"


@pytest.fixture(scope="session")
def ws_pairs_path(synth_root):
    return synth_root / "pairs_ws.tsv"
