from __future__ import annotations

import pytest

_LOG = pytest.StashKey[dict]()


@pytest.fixture
def criterion_log(request):
    return request.config.stash.setdefault(_LOG, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_LOG, None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(log):
        passed, text = log[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if passed else 'FAIL'} ({text})")
