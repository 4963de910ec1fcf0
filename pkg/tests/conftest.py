import os

import pytest
from hypothesis import settings

from monoid_library import abc, cyclic, one_point, trivial, truncated_naturals
from simplicial import sphere, wedge

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

# SNF on 12x12 object matrices can exceed the default per-example deadline
settings.register_profile("doldthom", deadline=None)
settings.load_profile("doldthom")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)


@pytest.fixture
def fixtures_dir():
    return FIXTURE_DIR


@pytest.fixture(params=["one_point", "z2", "z3", "trivial2", "abc", "truncated2"])
def fixture_monoid(request):
    return {
        "one_point": one_point,
        "z2": lambda: cyclic(2),
        "z3": lambda: cyclic(3),
        "trivial2": lambda: trivial(2),
        "abc": abc,
        "truncated2": lambda: truncated_naturals(2),
    }[request.param]()


@pytest.fixture
def circle():
    return sphere(1, 4)


@pytest.fixture
def two_sphere():
    return sphere(2, 4)


@pytest.fixture
def figure_eight():
    return wedge(sphere(1, 3), 2)
