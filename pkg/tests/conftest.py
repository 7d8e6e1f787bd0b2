from fractions import Fraction

import pytest

from bratteli.branching import BranchingParams
from bratteli.coeff import symbols
from bratteli.partitions import Partition


@pytest.fixture
def qt():
    return symbols()


@pytest.fixture
def formal():
    return BranchingParams.formal()


def P(*parts):
    return Partition(parts)


F = Fraction
