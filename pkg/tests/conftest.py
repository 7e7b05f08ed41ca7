import pytest
from hypothesis import settings

from c2eff.grading import Window
from c2eff.homotopy import extension_table
from c2eff.pages import compute_e2

# caches and jit compilation make first calls slow
settings.register_profile("c2eff", deadline=None)
settings.load_profile("c2eff")

SMALL = Window.square(10, 14)


@pytest.fixture(scope="session")
def small_page():
    return compute_e2(SMALL)


@pytest.fixture(scope="session")
def small_table():
    return extension_table(SMALL)
