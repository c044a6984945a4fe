import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE: dict[str, str] = {}


def record_acceptance(name: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE[name] = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")


@pytest.fixture
def acceptance():
    return record_acceptance


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split(".")[0])):
        terminalreporter.write_line(_ACCEPTANCE[key])
