import pytest

from baxref.rep import build_named


@pytest.fixture(scope="session")
def reps():
    """Cached representations keyed by (name, q, a_choice)."""
    cache = {}

    def get(name, q=2, a="q"):
        key = (name, str(q), a)
        if key not in cache:
            cache[key] = build_named(name, q, a)
        return cache[key]

    return get
