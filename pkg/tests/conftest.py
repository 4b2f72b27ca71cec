from __future__ import annotations

from fractions import Fraction

import pytest

from hexapod_liaison import cli, liaison, moebius, study

# Leg generic for the fixture: d1..d3 picked freely, d4..d6 from the subspace.
GENERIC_123 = (Fraction(20), Fraction(17), Fraction(9))


@pytest.fixture(scope="session")
def fixture_doc():
    return cli.load_fixture()


@pytest.fixture(scope="session")
def base(fixture_doc):
    return moebius.SixTuple([tuple(p) for p in fixture_doc["base"]])


@pytest.fixture(scope="session")
def platform(fixture_doc):
    return moebius.SixTuple([tuple(p) for p in fixture_doc["platform"]])


@pytest.fixture(scope="session")
def special_legs(fixture_doc):
    return tuple(cli.fixture_legs(fixture_doc))


@pytest.fixture(scope="session")
def generic_legs(fixture_doc):
    return tuple(cli.fixture_legs(fixture_doc, GENERIC_123))


@pytest.fixture(scope="session")
def bonds(base, platform):
    return liaison.compute_bonds(base, platform)


@pytest.fixture(scope="session")
def special_curve(base, platform, special_legs):
    return study.motion_curve(base, platform, special_legs)


@pytest.fixture(scope="session")
def generic_curve(base, platform, generic_legs):
    return study.motion_curve(base, platform, generic_legs)


# ---------------------------------------------------------- acceptance log

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
