from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from bsirrep.cyclotomic import CycNum
from bsirrep.repcore import BSParams

# criterion number -> (title, outcome, duration)
_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n, title = marker.args
    _ACCEPTANCE[n] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, verdict, secs = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {verdict}  {title}  ({secs:.2f}s)")


def coprime_params(rng: random.Random, bound: int = 7) -> BSParams:
    while True:
        p = rng.choice([x for x in range(-bound, bound + 1) if x])
        q = rng.randint(1, bound)
        if math.gcd(p, q) == 1 and not (abs(p) == 1 and q == 1):
            return BSParams(p, q)


def random_cyc(rng: random.Random, order: int, *, bound: int = 9) -> CycNum:
    phi = len(CycNum.rational(0, order).coeffs)
    return CycNum(order, [Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
                          for _ in range(phi)])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
