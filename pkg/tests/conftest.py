import functools

import pytest
from hypothesis import HealthCheck, settings

from mackeyalg import build_group

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@functools.lru_cache(maxsize=None)
def group(spec: str):
    # groups cache their subgroup data, so sharing instances keeps the suite fast
    return build_group(spec)


@pytest.fixture
def get_group():
    return group


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    outcomes = getattr(mod, "OUTCOMES", None)
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(outcomes):
        status, why = outcomes[n]
        line = f"{status} criterion {n}: {mod.TITLES[n]}"
        terminalreporter.write_line(line + (f"  ({why})" if why else ""))
