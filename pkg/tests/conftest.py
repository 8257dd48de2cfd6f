import functools
import os

import pytest
from hypothesis import settings

from newton_zeta.cli import load_fixture
from newton_zeta.geometry import build_newton

settings.register_profile("default", max_examples=100, deadline=None, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def fixture(name):
    """(polynomial, Newton polyhedron) for a shipped fixture, built once per session."""
    f, _ = load_fixture(name)
    return f, build_newton(f)


@pytest.fixture
def cusp():
    return fixture("cusp")


@pytest.fixture
def whitney():
    return fixture("whitney")
