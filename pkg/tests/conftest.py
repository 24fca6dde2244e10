import math
from fractions import Fraction

import pytest

from raregraph.family import FunctionFamily


def naive_bit(r, k):
    """floor(2**k * frac(r)) mod 2 straight from the definition."""
    r = Fraction(r)
    return math.floor((r - math.floor(r)) * 2**k) % 2


@pytest.fixture
def family_file(tmp_path):
    def make(text):
        p = tmp_path / "family.json"
        p.write_text(text)
        return str(p)

    return make


CONSTANT_THIRD = FunctionFamily.of([Fraction(1, 3)])
