import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import a_elements
from qpoincare.numeric import FloatAlgebra, cross_check, exact_to_float, q_factorial, q_number, t_matrix_float
from qpoincare.representations import universal_T_rep
from qpoincare.scalars import PARAMETERS, embed_numeric, q_fact, q_int

# tolerance for float-versus-exact comparisons
NUMERIC_TOL = 1e-10

_ALGS = {}


def alg(p):
    if p not in _ALGS:
        _ALGS[p] = FloatAlgebra(p)
    return _ALGS[p]


def to_vector(x):
    a = alg(x.p)
    v = np.zeros(a.dim, dtype=complex)
    for (n, m, k), c in x.terms.items():
        v[a.index(n, m, k)] += embed_numeric(c)
    return v


@pytest.mark.parametrize("p", (3, 5, 7))
def test_q_number_matches_exact_embedding(p):
    for n in range(-p, 2 * p):
        assert abs(q_number(p, n) - embed_numeric(q_int(p, n))) <= NUMERIC_TOL
    for n in range(p):
        assert abs(q_factorial(p, n) - embed_numeric(q_fact(p, n))) <= NUMERIC_TOL


def test_q_number_edges():
    assert q_number(5, 0) == 0
    assert q_number(5, 1) == 1
    assert abs(q_number(5, 5)) <= NUMERIC_TOL
    assert abs(q_number(3, 2) + 1) <= NUMERIC_TOL
    assert abs(q_number(4, 2)) <= NUMERIC_TOL
    assert abs(q_number(6, 2) - 2 * math.cos(math.pi / 3)) <= NUMERIC_TOL


@pytest.mark.parametrize("p", (3, 5))
def test_float_relations(p):
    a = alg(p)
    q = a.q
    ep, em, d = a.basis(1, 0, 0), a.basis(0, 1, 0), a.basis(0, 0, 1)
    assert np.allclose(a.mul(em, ep), q ** 2 * a.mul(ep, em), atol=NUMERIC_TOL)
    assert np.allclose(a.mul(d, ep), q ** -2 * a.mul(ep, d), atol=NUMERIC_TOL)
    assert np.allclose(a.mul(d, em), q ** -2 * a.mul(em, d), atol=NUMERIC_TOL)
    power = a.basis(0, 0, 0)
    for _ in range(p):
        power = a.mul(power, ep)
    assert not power.any()
    power = a.basis(0, 0, 0)
    for _ in range(p):
        power = a.mul(power, d)
    assert np.allclose(power, a.basis(0, 0, 0))


def test_float_associativity_on_random_vectors():
    p = 3
    a = alg(p)
    rng = np.random.default_rng(7)
    for _ in range(20):
        x, y, z = (rng.normal(size=a.dim) + 1j * rng.normal(size=a.dim) for _ in range(3))
        assert np.allclose(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)), atol=1e-9)


@settings(max_examples=60)
@given(a_elements(3), a_elements(3))
def test_exact_product_agrees_with_float_product(x, y):
    assert np.allclose(to_vector(x * y), alg(3).mul(to_vector(x), to_vector(y)), atol=NUMERIC_TOL)


@settings(max_examples=20)
@given(a_elements(5, max_terms=3), a_elements(5, max_terms=3))
def test_exact_product_agrees_with_float_product_p5(x, y):
    assert np.allclose(to_vector(x * y), alg(5).mul(to_vector(x), to_vector(y)), atol=NUMERIC_TOL)


@pytest.mark.parametrize("p", (3, 5))
def test_t_matrix_cross_check(p):
    assert cross_check(p) <= NUMERIC_TOL


@pytest.mark.parametrize("lam", ((2.0, -0.5), (0.3, 1.7)))
def test_t_matrix_cross_check_other_lambda(lam):
    assert cross_check(3, *lam) <= NUMERIC_TOL


def test_float_t_matrix_shape_and_counit():
    p = 5
    t = t_matrix_float(p, 1.0, 1.0)
    assert t.shape == (p, p, p ** 3)
    # counit: eta-free part at delta^k gives the identity after summing over k
    a = alg(p)
    slice_ = np.array([[sum(t[i, j, a.index(0, 0, k)] for k in range(p)) for j in range(p)] for i in range(p)])
    assert np.allclose(slice_, np.eye(p), atol=NUMERIC_TOL)


def test_exact_to_float_needs_every_parameter():
    d = universal_T_rep(3)
    with pytest.raises(KeyError):
        exact_to_float(d, {"lambda+": 1.0})
    full = {name: 0.0 for name in PARAMETERS}
    full.update({"lambda+": 1.0, "lambda-": 1.0})
    coeffs, exps = exact_to_float(d, full)
    assert coeffs.shape == (3, 3, 27)
    assert all(abs(e[0] + 1j) <= NUMERIC_TOL and abs(e[1] + 1j) <= NUMERIC_TOL for e in exps)
