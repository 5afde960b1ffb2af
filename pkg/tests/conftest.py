import random
from fractions import Fraction

import pytest

from ck4.exterior4 import GRADE_DIMS, Form


@pytest.fixture
def rng():
    return random.Random(91521)


def rand_scalar(rng):
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def rand_vector(rng):
    return tuple(rand_scalar(rng) for _ in range(4))


def rand_form(rng, grade):
    return Form(grade, tuple(rand_scalar(rng) for _ in range(GRADE_DIMS[grade])))
