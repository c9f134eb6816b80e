import pytest
from fractions import Fraction
from hypothesis import strategies as st

from heckelab.exact_algebra import JetLaurentMatrix, JetLaurentPoly, Scalar

_ACCEPTANCE = {}


def record_criterion(number, passed, detail=""):
    _ACCEPTANCE[number] = (passed, detail)


@pytest.fixture
def criterion():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {detail}")


def tx(jet_order):
    """``t`` and ``x`` generators at a given jet order."""
    return JetLaurentPoly.t_var(jet_order), JetLaurentPoly.x_var(jet_order)


def mat(rows, jet_order=None):
    return JetLaurentMatrix(rows, jet_order)


scalars = st.builds(
    Scalar,
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    st.one_of(st.just(Fraction(0)), st.fractions(min_value=-2, max_value=2, max_denominator=2)),
)


def jet_polys(jet_order=3, t_lo=-3, t_hi=3, max_terms=4):
    keys = st.tuples(st.integers(t_lo, t_hi), st.integers(0, jet_order))
    return st.dictionaries(keys, scalars, max_size=max_terms).map(
        lambda d: JetLaurentPoly(d, jet_order)
    )
