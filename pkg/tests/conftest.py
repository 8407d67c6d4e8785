import pytest
from hypothesis import strategies as st

from bosonflow.cyclo import CycloScalar, _field

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((name, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}" + (f"  [{detail}]" if detail else ""))


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclo_scalars(draw, n=None):
    if n is None:
        n = draw(st.integers(2, 12))
    deg = _field(n).degree
    coeffs = draw(st.lists(small_fractions, min_size=deg, max_size=deg))
    return CycloScalar(n, coeffs)
