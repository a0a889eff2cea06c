import random
from functools import lru_cache

import pytest

from matfac.ring import QQ, FieldSpec, omega_make, parse_scalar
from matfac.linalg import parse_matrix

F7 = FieldSpec(7)

# (field, omega text) pairs used by the randomized corpora
CONFIGS = (
    (QQ, "x^2"),
    (QQ, "x^3 + x^4"),
    (F7, "x^3"),
    (F7, "x^4"),
)

ACCEPTANCE = {}


def S(text, field=QQ):
    return parse_scalar(text, field)


def M(text, field=QQ):
    return parse_matrix(text, field)


def W(text, field=QQ):
    return omega_make(parse_scalar(text, field))


def config_omegas():
    return [omega_make(parse_scalar(t, k)) for k, t in CONFIGS]


@lru_cache(maxsize=None)
def corpus(count=200, seed=2024, size_bound=3):
    """Deterministic list of random objects spread over CONFIGS."""
    from matfac.generators import random_object

    rng = random.Random(seed)
    ws = config_omegas()
    return tuple(random_object(rng, ws[i % len(ws)], size_bound, min_size=1) for i in range(count))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
