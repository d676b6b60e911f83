import functools
import time

import pytest

from superradiant import ModelParams, QuadratureSpec

_ACCEPTANCE_LINES = []


@pytest.fixture
def quad():
    return QuadratureSpec()


@pytest.fixture
def ref_params():
    """lambda = 1.3, beta = 100, J = 0.5, eps = 1: the reference working point."""
    return ModelParams(lam=1.3, epsilon=1.0, j_coupling=0.5, beta=100.0)


def criterion(number, title):
    """Record a PASS/FAIL summary line for an acceptance test."""

    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException as exc:
                _ACCEPTANCE_LINES.append(
                    f"FAIL  criterion {number}: {title} ({time.perf_counter() - start:.1f}s) "
                    f"- {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
                raise
            _ACCEPTANCE_LINES.append(
                f"PASS  criterion {number}: {title} ({time.perf_counter() - start:.1f}s)")

        return inner

    return wrap


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
