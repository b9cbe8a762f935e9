"""Shared fixtures: the worked [[6,3]] code and registries built around it.

The generator matrix below is the 6x3 matrix whose columns span the code;
the golden constants (parity rows, the 8 codewords, both distances equal to
3) are the published ground truth for it and are frozen here verbatim.
"""

import pytest

from subspace_money.codes import CodeSpec
from subspace_money.gf2 import SubspaceBasis

# Columns of the generator matrix, read top to bottom.
WORKED_GENERATORS = ("100011", "010110", "001101")

# Rows of the code's parity check matrix H_C.
WORKED_PARITY_ROWS = ("011100", "110010", "101001")

# Rows of the dual's parity check matrix (the generator columns again).
WORKED_DUAL_PARITY_ROWS = WORKED_GENERATORS

WORKED_CODEWORDS = (
    "000000",
    "100011",
    "010110",
    "001101",
    "110101",
    "101110",
    "011011",
    "111000",
)

WORKED_DISTANCE = 3


@pytest.fixture(scope="session")
def worked_code() -> SubspaceBasis:
    return SubspaceBasis.from_strings(WORKED_GENERATORS)


@pytest.fixture(scope="session")
def worked_spec(worked_code) -> CodeSpec:
    return CodeSpec.build(worked_code, q=1)
