import pytest

from models.linkage import SubschemeModel
from services.characters import AdmissibleCharacter, IntFn
from utils.file_handler import FIXTURES_DIR, load_fixture_class


SKEW_GAMMA = {0: -1, 1: -1, 2: 3, 3: -1}
CURVE_GAMMA = {0: -1, 1: -1, 2: -1, 3: 3, 4: -1, 8: 1}
QUADRIC_GAMMA = {0: -1, 1: -1, 4: 5, 5: -3}


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def skew_class():
    return load_fixture_class("two_skew_lines")


@pytest.fixture
def quadric_class():
    return load_fixture_class("four_lines_on_quadric")


@pytest.fixture
def degree_ten_class():
    return load_fixture_class("degree_ten_minimal")


@pytest.fixture
def synthetic_class():
    return load_fixture_class("synthetic_235")


@pytest.fixture
def skew_gamma():
    return AdmissibleCharacter.of(SKEW_GAMMA)


@pytest.fixture
def curve_gamma():
    return AdmissibleCharacter.of(CURVE_GAMMA)


@pytest.fixture
def make_model():
    """Build (class, h, theta) models from plain dicts"""

    def _make(cls, h, theta=None):
        return SubschemeModel(cls=cls, h=h, theta=IntFn(theta or {}))

    return _make
