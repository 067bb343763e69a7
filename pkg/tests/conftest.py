"""Shared fixtures: the bundled corpus, parsed and validated once."""

from __future__ import annotations

import json

import pytest

from toricfano.io import parse_fan
from toricfano.oracle import corpus_directory


@pytest.fixture(scope="session")
def corpus_fans():
    """name -> validated Fan for every bundled `.fan` file."""
    root = corpus_directory()
    fans = {}
    for path in sorted(root.glob("*.fan")):
        fans[path.stem] = parse_fan(path.read_text(encoding="utf-8"))
    assert fans, "bundled corpus is missing"
    return fans


@pytest.fixture(scope="session")
def corpus_fingerprints():
    """The bundled fingerprint index."""
    path = corpus_directory() / "fingerprints.json"
    return json.loads(path.read_text(encoding="utf-8"))
