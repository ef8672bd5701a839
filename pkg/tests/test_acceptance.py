"""The twelve desk-scale acceptance checks, one test (and one report line)
per criterion."""

import sys

import pytest

from lamsub.acceptance import CRITERIA


@pytest.mark.parametrize(
    "criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 13)]
)
def test_criterion(criterion):
    result = criterion()
    print(result.line(), file=sys.stderr)
    assert result.ok, result.line()
