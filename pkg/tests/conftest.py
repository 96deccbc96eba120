import sys

import pytest

from mgreg.field import Field
from mgreg.modules import present_subquotient, quotient_module
from mgreg.ring import Ring

THREE_BLOCK_RELATIONS = ["x^2*y", "x*y^2", "x*y*z", "y^3", "y^2*z", "y*z^2"]
TWO_BLOCK_IDEAL = ["x0^2", "x0*y1", "x1*y0", "y0^2"]


@pytest.fixture
def two_block_ring():
    return Ring((("x0", "x1"), ("y0", "y1")))


@pytest.fixture
def three_block_ring():
    return Ring((("x",), ("y",), ("z",)))


@pytest.fixture
def abc_ring():
    return Ring((("a",), ("b",), ("c",)))


def make_three_block_quotient(field=None):
    ring = Ring((("x",), ("y",), ("z",)), field or Field.rationals())
    return quotient_module(ring, [ring.parse(t) for t in THREE_BLOCK_RELATIONS])


def make_two_block_ideal(field=None):
    ring = Ring((("x0", "x1"), ("y0", "y1")), field or Field.rationals())
    return present_subquotient([ring.parse(t) for t in TWO_BLOCK_IDEAL], [], ring)


@pytest.fixture
def three_block_quotient():
    return make_three_block_quotient()


@pytest.fixture
def two_block_ideal():
    return make_two_block_ideal()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}: {detail}")
