import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qpoincare.reduced import AElement
from qpoincare.scalars import CycScalar, ParamScalar, field

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    return request.config._acceptance_lines


# -- strategies --------------------------------------------------------------------


def cyc_scalars(p: int, max_coeff: int = 4):
    """Random elements of Q(w): small integer polynomials in w over a small denominator."""
    fld = field(p)
    return st.builds(
        lambda coeffs, den: CycScalar(fld, tuple(coeffs), den),
        st.lists(st.integers(-max_coeff, max_coeff), min_size=fld.degree, max_size=fld.degree),
        st.integers(1, 5),
    )


def nonzero_cyc_scalars(p: int):
    return cyc_scalars(p).filter(bool)


def small_coefficients(p: int):
    """A small integer times a power of w."""
    fld = field(p)
    return st.builds(lambda c, j: fld.w_power(j) * c,
                     st.integers(-3, 3).filter(bool), st.integers(0, 4 * p - 1))


def a_elements(p: int, max_terms: int = 4):
    key = st.tuples(st.integers(0, p - 1), st.integers(0, p - 1), st.integers(0, p - 1))
    terms = st.dictionaries(key, small_coefficients(p), max_size=max_terms)
    fld = field(p)
    return terms.map(lambda t: AElement(p, {k: ParamScalar.const(fld, v) for k, v in t.items()}))
