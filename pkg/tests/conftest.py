import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from adehirota.coeffs import beta_table, compute_a, eigenbasis  # noqa: E402
from adehirota.rootsys import SUPPORTED_DEFAULT, coxeter_data  # noqa: E402

ALL_TYPES = [str(t) for t in SUPPORTED_DEFAULT]


@functools.lru_cache(maxsize=None)
def cox_of(label):
    return coxeter_data(label)


@functools.lru_cache(maxsize=None)
def basis_of(label):
    return eigenbasis(cox_of(label))


@functools.lru_cache(maxsize=None)
def beta_of(label, cutoff):
    return beta_table(cox_of(label), basis_of(label), cutoff)


@functools.lru_cache(maxsize=None)
def a_of(label):
    return compute_a(cox_of(label))


@pytest.fixture(params=ALL_TYPES)
def any_type(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
