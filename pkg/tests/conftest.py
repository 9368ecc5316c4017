import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from edr.matrix import Axpy, Matrix, Swap, apply_elementary, identity  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

ACCEPTANCE = {}


def record(number, ok, detail=""):
    ACCEPTANCE[number] = (ok, detail)


def random_matrix(ring, rng, m, n, size):
    return Matrix(ring, m, n, [ring.random_element(rng, size) for _ in range(m * n)])


def random_unimodular_pair(ring, rng, n, steps=10, size=3):
    """A random unimodular U together with its inverse."""
    u, uinv = identity(ring, n), identity(ring, n)
    if n < 2:
        return u, uinv
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.25:
            op, inv = Swap(i, j), Swap(i, j)
        else:
            c = ring.random_element(rng, size)
            op, inv = Axpy(i, j, c), Axpy(j, i, ring.neg(c))
        u = apply_elementary(u, op)
        # the inverse picks up E^-1 on the right; a column op applies the transpose
        uinv = apply_elementary(uinv, inv, "col")
    return u, uinv


@pytest.fixture
def rng(request):
    return random.Random(request.node.name)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
