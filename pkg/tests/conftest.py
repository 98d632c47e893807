from fractions import Fraction

import pytest

from darboux.oscillator import OscillatorModel
from darboux.transform import build_transform


@pytest.fixture(scope="session")
def model():
    return OscillatorModel()


@pytest.fixture(scope="session")
def tr12(model):
    return build_transform(model, (1, 2))


@pytest.fixture(scope="session")
def tr01(model):
    return build_transform(model, (0, 1))


def fr(num, den=1) -> Fraction:
    return Fraction(num, den)
