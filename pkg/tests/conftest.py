import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from bandspec import AlphaTable, GeometricExp, LogShift, Affine, Unit

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def oracle():
    return json.loads((FIXTURES / "oracles.json").read_text())


def weight_2n():
    return GeometricExp(2.0, Affine(1.0, 0.0))


def weight_lin():
    return GeometricExp(math.e, LogShift())


def weight_2n_lin():
    return GeometricExp(2.0, AlphaTable.from_function(lambda n: n + np.log2(n + 1.0), 4096, 1.0))


TEST_WEIGHTS = {
    "unit": Unit(),
    "2^n": weight_2n(),
    "n+1": weight_lin(),
    "2^n(n+1)": weight_2n_lin(),
}
