import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import a_elements
from qpoincare.extended import EElement
from qpoincare.parser import ParseError, parse, tokenize
from qpoincare.quantum_algebra import UElement
from qpoincare.reduced import AElement, zeta_idempotent
from qpoincare.representations import cutoff_qexp, qbessel_cut
from qpoincare.scalars import ParamScalar, field

CORPUS = [
    "1", "0", "-1", "2/3", "i", "q", "w", "q^(1/2)", "q^(-3/2)", "q^-1",
    "eta+", "eta-", "delta", "delta^-1", "delta^3", "eta+^2", "eta-*eta+", "delta*eta+",
    "eta+ eta- delta^2", "(1 + eta+)^2", "(eta+ - eta-)*(eta+ + eta-)", "lambda+*eta+",
    "i*lambda-^2*eta- + chi+", "q^2*eta+*eta-*delta", "zeta(0)", "zeta(1) + zeta(2)",
    "zeta(2)*delta", "qexp+(eta+)", "qexp-(i*eta-)", "qbessel(0, eta+*eta-)",
    "qbessel(1, lambda+*lambda-*eta+*eta-)", "z+", "z+^2*z-", "z+*eta+ + 3",
    "exp(i*lambda+*z+)", "exp(-i*chi-*z-)*z+", "exp(i*lambda+*z+ + i*lambda-*z-)*delta",
    "kappa", "kappa^-1", "p+*kappa", "p-*p+", "P+ - P-", "p+^3", "kappa^2*p+*p-",
    "(p+ + p-)^2", "q*kappa + i*p+", "lambda'+*p+ - chi-*P-", "p+/2", "(kappa - 1)*(kappa + 1)",
    "w^3*p- kappa",
]


def fld(p):
    return field(p)


def u(p):
    return UElement.p_plus(p), UElement.p_minus(p), UElement.kappa(p)


# -- examples ----------------------------------------------------------------------------


def test_reordering_example():
    p = 3
    got = parse("eta-*eta+", p, "A")
    assert got == (AElement.eta_plus(p) * AElement.eta_minus(p)).scale(fld(p).q_power(2))
    assert got == AElement.eta_minus(p) * AElement.eta_plus(p)


@pytest.mark.parametrize("p", (3, 5))
def test_periodicity_of_delta(p):
    assert parse(f"delta^{p}", p) == AElement.one(p)
    assert parse("delta^-1", p) == AElement.delta(p, p - 1)


@pytest.mark.parametrize("p", (3, 5))
def test_quantum_side_example(p):
    pp, _, kap = u(p)
    assert parse("p+*kappa", p, "U") == (kap * pp).scale(fld(p).q_power(-1))
    assert parse("p+ kappa", p) == pp * kap


def test_scalars_and_parameters():
    p = 5
    f = fld(p)
    assert parse("q^(1/2)", p) == AElement.one(p).scale(f.sqrt_q)
    assert parse("q^(1/2)", p) == parse("w^2", p)
    assert parse("i", p) == parse(f"w^{p}", p)
    lam = ParamScalar.param(f, "lambda'-")
    assert parse("lambda'- * eta+", p) == AElement.eta_plus(p).scale(lam)


def test_functions():
    p = 3
    eta = AElement.eta_plus(p)
    assert parse("zeta(1)", p) == zeta_idempotent(p, 1)
    assert parse("qexp+(eta+)", p) == cutoff_qexp(eta, 1, p)
    xi = AElement.eta_plus(p) * AElement.eta_minus(p)
    assert parse("qbessel(1, eta+ eta-)", p) == qbessel_cut(1, xi, p)
    assert parse("exp(i*chi+*z+)", p) == EElement.exp(p, ParamScalar.param(fld(p), "chi+") * fld(p).i)


def test_side_inference_and_result_types():
    assert isinstance(parse("eta+", 3), AElement)
    assert isinstance(parse("z+ eta+", 3), EElement)
    assert isinstance(parse("kappa", 3), UElement)
    assert isinstance(parse("2", 3), AElement)
    assert isinstance(parse("2", 3, "U"), UElement)
    with pytest.raises(ValueError):
        parse("1", 3, "B")


def test_tokenizer_positions():
    toks = tokenize("eta+ *  kappa")
    assert [(t.text, t.pos) for t in toks if t.kind != "end"] == [("eta+", 0), ("*", 5), ("kappa", 8)]


# -- round trip -----------------------------------------------------------------------------


@pytest.mark.parametrize("p", (3, 5))
@pytest.mark.parametrize("src", CORPUS)
def test_round_trip_corpus(src, p):
    x = parse(src, p)
    assert parse(x.render(), p, "U" if isinstance(x, UElement) else "A") == x


def test_corpus_size():
    assert len(CORPUS) == 50
    assert len(set(CORPUS)) == 50


@given(a_elements(3))
def test_round_trip_random_function_elements(x):
    assert parse(x.render(), 3, "A") == x


@given(st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2), st.integers(0, 2),
                                 st.integers(0, 2)),
                       st.tuples(st.integers(-3, 3).filter(bool), st.integers(0, 11)), max_size=4))
def test_round_trip_random_quantum_elements(raw):
    p = 3
    f = fld(p)
    x = UElement(p, {k: ParamScalar.const(f, f.w_power(j) * c) for k, (c, j) in raw.items()})
    assert parse(x.render(), p, "U") == x


# -- errors ------------------------------------------------------------------------------------


def error_pos(src, p=3, side=None):
    with pytest.raises(ParseError) as info:
        parse(src, p, side)
    assert str(info.value).startswith(f"position {info.value.pos}: ")
    return info.value.pos


def test_mixed_sides_rejected():
    assert error_pos("eta+ * kappa") == 7
    assert error_pos("kappa", side="A") == 0
    assert error_pos("p+ + delta") == 5


def test_unknown_symbol():
    assert error_pos("eta+ * foo") == 7
    assert error_pos("eta0") == 0


def test_bad_exponents():
    assert error_pos("eta+^-1") == 4
    assert error_pos("eta+^(1/2)") == 4
    assert error_pos("p+^x") == 3


def test_division_by_generator_rejected():
    assert error_pos("1/eta+") == 1
    assert error_pos("kappa/0") == 5


def test_qbessel_order_range():
    assert error_pos("qbessel(3, eta+)", p=3) == 0
    assert error_pos("qbessel(-1, eta+)", p=3) == 8
    assert parse("qbessel(4, eta+)", 5) == qbessel_cut(4, AElement.eta_plus(5), 5)


def test_structural_errors():
    assert error_pos("(eta+") == 5
    assert error_pos("eta+ )") == 5
    assert error_pos("") == 0
    assert error_pos("exp(eta+)") == 4
    assert error_pos("delta^p") == 6
