from __future__ import annotations

import sys

import pytest

from singerlat.singer import classical_plane, extract_difference_set, slanted_quadrangle

_planes: dict = {}
_quads: dict = {}


def plane(q):
    if q not in _planes:
        _planes[q] = classical_plane(q)
    return _planes[q]


def quadrangle(q):
    if q not in _quads:
        _quads[q] = slanted_quadrangle(q)
    return _quads[q]


def ds(q):
    return extract_difference_set(plane(q))


@pytest.fixture(scope="session")
def plane_of():
    return plane


@pytest.fixture(scope="session")
def quadrangle_of():
    return quadrangle


@pytest.fixture(scope="session")
def ds_of():
    return ds


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
