from __future__ import annotations

import pytest

from stforge.bench import default_corpus_path, load_corpus


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(default_corpus_path())


@pytest.fixture(scope="session")
def corpus_by_id(corpus):
    return {task.id: task for task in corpus}


@pytest.fixture(scope="session")
def led_task(corpus_by_id):
    return corpus_by_id["easy_led_control"]
