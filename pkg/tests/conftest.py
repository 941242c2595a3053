import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", max_examples=10, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def build():
    """Memoized make_rotation_group(presentation_for(family, params)) keyed by family name and params."""
    from rotary_forge.catalogue import FamilyId, Params, presentation_for
    from rotary_forge.rotation import make_rotation_group

    cache = {}

    def get(family, **params):
        key = (family, tuple(sorted(params.items())))
        if key not in cache:
            cache[key] = make_rotation_group(presentation_for(FamilyId(family), Params(**params)))
        return cache[key]

    return get


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion; the line is printed in the terminal summary."""
    import contextlib
    import time

    @contextlib.contextmanager
    def run(n, title):
        t0 = time.perf_counter()
        detail = {}
        try:
            yield detail
        except BaseException as e:
            ACCEPTANCE[n] = f"criterion {n:2d} FAIL  {title} ({type(e).__name__}: {str(e).splitlines()[0][:160] if str(e) else ''})"
            raise
        else:
            extra = ", ".join(f"{k}={v}" for k, v in detail.items())
            ACCEPTANCE[n] = f"criterion {n:2d} PASS  {title} [{time.perf_counter() - t0:.1f}s{', ' + extra if extra else ''}]"
        finally:
            print(ACCEPTANCE.get(n, f"criterion {n:2d} FAIL  {title}"))

    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
