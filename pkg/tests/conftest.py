import importlib

import pytest

ACCEPTANCE_LINES: list[str] = []


def _kernel_modules():
    mods = [importlib.import_module("pctreap._pytreap")]
    try:
        mods.append(importlib.import_module("pctreap._ctreap"))
    except ImportError:
        pass
    return mods


@pytest.fixture(params=_kernel_modules(), ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def kernel(request):
    """Each available treap kernel, called directly."""
    return request.param


@pytest.fixture
def criterion():
    def record(number, passed, detail: str) -> None:
        status = passed if isinstance(passed, str) else ("PASS" if passed else "FAIL")
        line = f"[{status}] criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fast_switching():
    """Shrink the GIL switch interval so threads interleave mid-update."""
    import sys

    old = sys.getswitchinterval()
    sys.setswitchinterval(1e-5)
    yield
    sys.setswitchinterval(old)
