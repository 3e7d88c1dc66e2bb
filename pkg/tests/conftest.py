import random

import pytest

from flat_systoles.origami import Origami, _is_transitive, parse_origami

WORKED15 = """sigma_a=(1,2,3,4,5,6)(7,8,9,10,11,12)(13,14,15)
sigma_b=(1,7,13)(2,8,14)(3,9,15)(4,10,6,12,5,11)"""
WITNESS30 = (
    "σa=(1..8)(9..30), "
    "σb=(1,9,27,23,8,30,26,22,7,29,25,21,6,28,24,20,5,13,17,2,10,14,18,3,11,15,19,4,12,16)"
)
L_SHAPE = "σa=(1 2), σb=(1 3)"
TORUS = "σa=id, σb=id on 1 square"


@pytest.fixture(scope="session")
def worked15():
    return parse_origami(WORKED15)


@pytest.fixture(scope="session")
def witness30():
    return parse_origami(WITNESS30)


@pytest.fixture(scope="session")
def l_origami():
    return parse_origami(L_SHAPE)


@pytest.fixture(scope="session")
def torus():
    return parse_origami(TORUS)


def random_origamis(count, max_degree=12, min_degree=2, seed=0, singular=True):
    """Deterministic corpus of random connected origamis."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(min_degree, max_degree)
        a = list(range(n))
        b = list(range(n))
        rng.shuffle(a)
        rng.shuffle(b)
        if not _is_transitive(a, b):
            continue
        o = Origami.from_images(a, b)
        if singular and not o.singularities:
            continue
        out.append(o)
    return out


@pytest.fixture(scope="session")
def corpus():
    return random_origamis(200, max_degree=12, seed=2024)


@pytest.fixture(scope="session")
def small_corpus():
    return random_origamis(60, max_degree=8, seed=7)


# acceptance summary: tests append (criterion, passed, detail) here
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
