"""Shared fixtures: small polygons every suite exercises."""

from fractions import Fraction

import pytest

from wvguard.geometry import Point, pt
from wvguard.polygon import SimplePolygon, validate_simple


def square(side=1):
    return validate_simple([pt(0, 0), pt(side, 0), pt(side, side), pt(0, side)])


def l_polygon():
    """The canonical L: star-shaped from (0,0), one reflex vertex at (1,1)."""
    return validate_simple(
        [pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)])


def comb_polygon(teeth=3, tooth_height=2):
    """Rectangular-tooth comb over a base corridor; weakly visible from its base.

    Ring: (0,0), (w,0), (w,1), teeth right-to-left, (0,1).
    """
    w = 3 * teeth + 1
    ring = [pt(0, 0), pt(w, 0), pt(w, 1)]
    for i in reversed(range(teeth)):
        a, b = 3 * i + 1, 3 * i + 2
        ring += [pt(b, 1), pt(b, 1 + tooth_height), pt(a, 1 + tooth_height), pt(a, 1)]
    ring.append(pt(0, 1))
    return validate_simple(ring)


@pytest.fixture
def unit_square():
    return square()


@pytest.fixture
def lpoly():
    return l_polygon()


@pytest.fixture
def comb3():
    return comb_polygon(3)


# registered late so acceptance reporting is available everywhere
def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_wvguard_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
