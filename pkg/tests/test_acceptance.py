"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import warnings

import pytest

from grover_walk import acceptance
from grover_walk.errors import NonDecayingWarning


@pytest.mark.parametrize("criterion", acceptance.CRITERIA,
                         ids=[f"criterion_{i}" for i in range(1, len(acceptance.CRITERIA) + 1)])
def test_criterion(criterion, request):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonDecayingWarning)
        result = criterion()
    line = result.line()
    print(line)
    lines = getattr(request.config, "_acceptance_lines", [])
    lines.append(line)
    request.config._acceptance_lines = lines
    assert result.passed, line
