from functools import lru_cache

import pytest

from embcodes.families import GeometryDescriptor, build


@lru_cache(maxsize=None)
def _build(family, q, **kw):
    return build(GeometryDescriptor.make(family, q, **kw))


def built(family, q, **kw):
    """Session-cached pipeline build keyed by descriptor fields."""
    return _build(family, q, **kw)


@pytest.fixture(scope="session")
def get_built():
    return built


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
